"""Longevity, genealogical screening and the generation-by-generation proof search.

The search builds, for growing ``i``, the set of female chunks of length
``2i`` over {1,2,3} that have no certain split point and still have a
plausible ancestry ``L`` days back. A cut is certain only if it splits for
every continuation the chunk could have inside an old string. Each
generation extends the survivors of the previous one by every two-digit
ending. When a generation comes out empty,
no atom of a string that is ``L + 1`` days old can be longer than the last
non-empty length, and every such atom was covered by a longevity check on
some member or one of its 15 one-digit extensions. The decay bound follows
as ``M + L + 1`` where ``M`` is the largest longevity seen.
"""

from __future__ import annotations

import json
import logging
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Callable, Dict, List, Optional, Tuple

from .core import AudioString, Sex, described_ok, jhc, parent, render
from .splitting import is_splittable, is_splittable_in_context, split_atoms
from .table import Classification, PeriodicTable, Unstable, classify

log = logging.getLogger(__name__)

DEFAULT_L = 8
DEFAULT_CAP_DAYS = 50
DEFAULT_GENERATION_CAP = 200

SPLIT_MODES = ("context", "standalone")

ENDINGS: Tuple[AudioString, ...] = tuple(a + b for a, b in product("123", repeat=2))
_LETTERS = "123"


class LongevityCapExceeded(RuntimeError):
    def __init__(self, cap_days: int, string: Optional[AudioString] = None):
        where = "" if string is None else f" for {render(string)}"
        super().__init__(f"longevity exceeds {cap_days} days{where}")
        self.cap_days = cap_days
        self.string = string


class NonHalting(RuntimeError):
    def __init__(self, certificate: "ProofCertificate"):
        super().__init__(f"no empty generation up to i={certificate.generations[-1].i}")
        self.certificate = certificate


@dataclass(frozen=True)
class LongevityResult:
    days: int
    final_compound: Counter


class Longevity:
    """Per-table memo of atom longevities.

    Atoms decay independently, so the longevity of a string is the largest
    longevity among its atoms, and an unclassified atom lives one day
    longer than the longest-lived atom of its one-day decay.
    """

    def __init__(self, table: PeriodicTable):
        self.table = table
        self._atom_days: Dict[AudioString, int] = {}

    def atom_days(self, atom: AudioString, cap_days: int) -> int:
        days = self._atom_days.get(atom)
        if days is None:
            if not isinstance(classify(atom, self.table), Unstable):
                days = 0
            else:
                if cap_days <= 0:
                    raise LongevityCapExceeded(cap_days)
                days = 1 + max(self.atom_days(p, cap_days - 1) for p in split_atoms(jhc(atom)))
            self._atom_days[atom] = days
        if days > cap_days:
            raise LongevityCapExceeded(cap_days)
        return days

    def days(self, s: AudioString, cap_days: int = DEFAULT_CAP_DAYS) -> int:
        try:
            return max(self.atom_days(a, cap_days) for a in split_atoms(s))
        except LongevityCapExceeded as exc:
            raise LongevityCapExceeded(cap_days, s) from exc

    def compound(self, s: AudioString, days: int) -> Counter:
        out: Counter = Counter()
        stack = [(a, days) for a in split_atoms(s)]
        while stack:
            a, d = stack.pop()
            if d == 0:
                out[classify(a, self.table)] += 1
            else:
                stack.extend((p, d - 1) for p in split_atoms(jhc(a)))
        return out


def longevity(s: AudioString, table: PeriodicTable, cap_days: int = DEFAULT_CAP_DAYS) -> LongevityResult:
    calc = Longevity(table)
    days = calc.days(s, cap_days)
    return LongevityResult(days, calc.compound(s, days))


@lru_cache(maxsize=1 << 21)
def _has_ancestry(s: AudioString, sex: Sex, ascents: int, check_top: bool) -> bool:
    if ascents == 0:
        if not check_top:
            return True
        return any(described_ok(s, x) for x in Sex)
    if not described_ok(s, sex):
        return False
    known = parent(s, sex).known
    if len(known) <= 2:
        # two letters or fewer can be described by anything
        return True
    return any(_has_ancestry(known, x, ascents - 1, check_top) for x in Sex)


def screen(chunk: AudioString, sex: Sex, L: int, check_top: bool = False) -> bool:
    """Whether ``chunk`` can sit in a string with ``L`` days of grammatical history.

    Every one of the ``L`` ascents needs a grammatical punctuation of the
    current string; both sexes are tried for every ancestor. A chain whose
    known part shrinks to two letters or fewer is accepted outright.
    With ``check_top`` the ancestor reached after ``L`` ascents must also
    admit a grammatical punctuation.
    """
    if L < 1:
        raise ValueError("L must be >= 1")
    return _has_ancestry(chunk, sex, L, check_top)


@lru_cache(maxsize=None)
def _admissible(L: int, check_top: bool) -> Callable[[AudioString], bool]:
    # one predicate object per setting, so split decisions stay memoized across generations
    return lambda s: screen(s, Sex.FEMALE, L, check_top)


def extensions(w: AudioString) -> List[AudioString]:
    """The 15 one-letter extensions: ``c+w``, ``w+c`` and ``c+w+d``."""
    return (
        [c + w for c in _LETTERS]
        + [w + c for c in _LETTERS]
        + [c + w + d for c in _LETTERS for d in _LETTERS]
    )


@dataclass(frozen=True)
class GenerationSet:
    i: int
    members: Tuple[AudioString, ...]


@dataclass(frozen=True)
class GenerationRecord:
    i: int
    count: int
    max_longevity: int
    argmax: Optional[AudioString] = None


@dataclass
class ProofCertificate:
    L: int
    cap_days: int
    generations: List[GenerationRecord] = field(default_factory=list)
    halted_at: Optional[int] = None
    M: int = 0
    check_top: bool = False
    split_mode: str = "context"
    expected_halt: Optional[int] = None

    @property
    def N(self) -> Optional[int]:
        return None if self.halted_at is None else self.M + self.L + 1

    @property
    def status(self) -> str:
        return "PROVEN" if self.halted_at is not None else "NOT-PROVEN"

    @property
    def halt_discrepancy(self) -> Optional[int]:
        """How far the halting index sits from ``expected_halt``, when both are known and differ."""
        if self.halted_at is None or self.expected_halt is None or self.halted_at == self.expected_halt:
            return None
        return self.halted_at - self.expected_halt

    @property
    def atom_length_bound(self) -> Optional[int]:
        return None if self.halted_at is None else 2 * self.halted_at

    def to_json(self) -> dict:
        data = {
            "L": self.L,
            "capDays": self.cap_days,
            "generations": [
                {"i": g.i, "count": g.count, "maxLongevity": g.max_longevity}
                for g in self.generations
            ],
            "haltedAt": self.halted_at,
            "M": self.M,
            "N": self.N,
            "status": self.status,
        }
        if self.halt_discrepancy is not None:
            data["haltDiscrepancy"] = self.halt_discrepancy
        return data

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)


def next_generation(
    prev: GenerationSet,
    L: int,
    calc: Longevity,
    cap_days: int = DEFAULT_CAP_DAYS,
    check_top: bool = False,
    split_mode: str = "context",
) -> Tuple[GenerationSet, int, Optional[AudioString]]:
    """Extend every survivor by each ending; return the new set and its longevity record.

    ``split_mode="context"`` drops a candidate only if some cut splits
    whatever screened continuation follows it in a longer string.
    ``"standalone"`` drops it if it splits as a complete string, which can
    discard chunks of real atoms.
    """
    if split_mode == "context":
        admissible = _admissible(L, check_top)

        def splittable(w: AudioString) -> bool:
            return is_splittable_in_context(w, admissible=admissible)
    elif split_mode == "standalone":
        splittable = is_splittable
    else:
        raise ValueError(f"split_mode must be one of {SPLIT_MODES}")
    prefixes = prev.members if prev.i > 0 else ("",)
    members = []
    best, best_string = 0, None
    for m in prefixes:
        for end in ENDINGS:
            w = m + end
            if not screen(w, Sex.FEMALE, L, check_top) or splittable(w):
                continue
            members.append(w)
            for s in [w] + extensions(w):
                d = calc.days(s, cap_days)
                if d > best:
                    best, best_string = d, s
    return GenerationSet(prev.i + 1, tuple(members)), best, best_string


def cosmo(
    table: PeriodicTable,
    L: int = DEFAULT_L,
    cap_days: int = DEFAULT_CAP_DAYS,
    generation_cap: int = DEFAULT_GENERATION_CAP,
    check_top: bool = False,
    split_mode: str = "context",
    raise_on_nonhalt: bool = False,
    time_budget: Optional[float] = None,
    expected_halt: Optional[int] = None,
) -> ProofCertificate:
    """Run the search until a generation is empty, or stop unproven.

    The search stops unproven after ``generation_cap`` generations, or once
    ``time_budget`` seconds have passed at the end of a generation.
    """
    if L < 1 or cap_days < 1 or generation_cap < 1:
        raise ValueError("L, cap_days and generation_cap must be >= 1")
    if split_mode not in SPLIT_MODES:
        raise ValueError(f"split_mode must be one of {SPLIT_MODES}")
    calc = Longevity(table)
    cert = ProofCertificate(L, cap_days, check_top=check_top, split_mode=split_mode, expected_halt=expected_halt)
    gen = GenerationSet(0, ())
    start = time.monotonic()
    while gen.i < generation_cap:
        if time_budget is not None and gen.i and time.monotonic() - start > time_budget:
            log.info("time budget of %.0fs spent after i=%d", time_budget, gen.i)
            break
        gen, best, argmax = next_generation(gen, L, calc, cap_days, check_top, split_mode)
        if best > cert.M:
            cert.M = best
        cert.generations.append(GenerationRecord(gen.i, len(gen.members), cert.M, argmax))
        log.info("i=%d members=%d M=%d", gen.i, len(gen.members), cert.M)
        if not gen.members:
            cert.halted_at = gen.i
            return cert
    if raise_on_nonhalt:
        raise NonHalting(cert)
    return cert
