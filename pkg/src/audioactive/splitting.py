"""Split points and atoms.

``L.R`` splits when the two halves evolve independently forever. The last
digit of ``L`` never changes under decay, so the cut survives exactly when
no day's first digit of ``R`` equals the last digit of ``L``.

Those first digits depend only on a leading window of ``R``: the full runs
of a known prefix describe a known prefix of the next day. Clipping each
day's known prefix to ``window`` digits gives a finite-state system whose
states are ``(prefix, complete)``; once a state repeats, the set of first
digits is final. States are memoized, since the orbits of different strings
merge after a few days.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple

from .core import AudioString, evolve

DEFAULT_WINDOW = 24
MAX_WINDOW = 4096
DEFAULT_STEP_BUDGET = 1000
DEFAULT_CONTEXT_DEPTH = 12

_RUN = re.compile(r"(.)\1*", re.DOTALL)

State = Tuple[str, bool]

# window -> state -> first digits (None: the window ran dry)
_memo: Dict[int, Dict[State, Optional[FrozenSet[str]]]] = {}


class CycleNotFound(RuntimeError):
    """The prefix descriptor did not revisit a state within the budget."""


def _step(prefix: str, complete: bool, window: int) -> Optional[State]:
    runs = list(_RUN.finditer(prefix))
    if not complete:
        # the last run may continue past what is known
        runs.pop()
    if not runs:
        return None
    out = "".join(chr(48 + m.end() - m.start()) + m.group(1) for m in runs)
    if len(out) > window:
        return out[:window], False
    return out, complete


def _orbit(start: State, window: int, budget: int) -> Optional[FrozenSet[str]]:
    memo = _memo.setdefault(window, {})
    path: List[State] = []
    index: Dict[State, int] = {}
    state: Optional[State] = start
    while True:
        if state is None:
            tail = None
            break
        if state in memo:
            tail = memo[state]
            break
        if state in index:
            cycle = path[index[state]:]
            tail = frozenset(st[0][0] for st in cycle)
            for st in cycle:
                memo[st] = tail
            del path[index[state]:]
            break
        if len(path) >= budget:
            raise CycleNotFound(f"no repeat within {budget} steps")
        index[state] = len(path)
        path.append(state)
        state = _step(state[0], state[1], window)
    for st in reversed(path):
        if tail is not None:
            tail = tail | {st[0][0]}
        memo[st] = tail
    return tail


def first_digits(
    right: AudioString,
    open_ended: bool = False,
    window: int = DEFAULT_WINDOW,
    budget: int = DEFAULT_STEP_BUDGET,
) -> Optional[FrozenSet[str]]:
    """Every symbol that ever leads ``evolve(right, n)``, n >= 0.

    With ``open_ended`` the string is taken to continue with unknown digits;
    the result is then ``None`` when the known part cannot settle it.
    """
    w = window
    while True:
        complete = not open_ended and len(right) <= w
        firsts = _orbit((right[:w], complete), w, budget)
        if firsts is not None:
            return firsts
        if len(right) <= w:
            if open_ended:
                return None
            raise AssertionError("a complete prefix cannot run dry")
        if w >= MAX_WINDOW:
            raise CycleNotFound(f"prefix window exhausted at {w} digits")
        w *= 2


def splits_after(
    left: AudioString,
    right: AudioString,
    open_ended: bool = False,
    budget: int = DEFAULT_STEP_BUDGET,
) -> bool:
    """Whether ``left + right`` evolves as ``left`` and ``right`` side by side forever.

    ``open_ended`` treats ``right`` as followed by unknown digits and only
    reports a split that holds whatever they are.
    """
    if left[-1] == right[0]:
        return False
    firsts = first_digits(right, open_ended=open_ended, budget=budget)
    return firsts is not None and left[-1] not in firsts


def cut_points(s: AudioString, open_ended: bool = False) -> List[int]:
    return [k for k in range(1, len(s)) if splits_after(s[:k], s[k:], open_ended)]


def is_splittable(s: AudioString, open_ended: bool = False) -> bool:
    return any(splits_after(s[:k], s[k:], open_ended) for k in range(len(s) - 1, 0, -1))


def split_atoms(s: AudioString) -> List[AudioString]:
    atoms = []
    start = 0
    for k in cut_points(s):
        atoms.append(s[start:k])
        start = k
    atoms.append(s[start:])
    return atoms


Admissible = Optional[Callable[[AudioString], bool]]


@lru_cache(maxsize=1 << 20)
def _context_split(left: AudioString, right: AudioString, depth: int, admissible: Admissible) -> bool:
    target = left[-1]

    # depth-first over the digits that may follow; ``last`` is the char of the last pair
    def holds(tail: str, last: str) -> bool:
        r = right + tail
        if tail and admissible is not None and not admissible(left + r):
            # this continuation cannot occur, so it cannot close the cut
            return True
        if len(tail) % 2 == 0 and target in first_digits(r):
            # the string may simply end here
            return False
        firsts = first_digits(r, open_ended=True)
        if firsts is not None:
            return target not in firsts
        if len(tail) >= depth:
            # undecided: keep the cut closed, which only keeps more chunks
            return False
        if len(tail) % 2 == 0:
            return all(holds(tail + d, last) for d in "123")
        return all(holds(tail + d, d) for d in "123" if d != last)

    return holds("", right[-1])


def splits_in_context(
    left: AudioString,
    right: AudioString,
    depth: int = DEFAULT_CONTEXT_DEPTH,
    admissible: Admissible = None,
) -> bool:
    """Whether ``left.right`` splits however the string goes on after ``right``.

    ``right`` is taken to end on a pair boundary of a described string, so
    what follows is either nothing or further (count, char) pairs over
    {1,2,3} with no char repeating its neighbour. ``admissible``, if given,
    rules out continuations: it sees ``left + right + tail`` and returns
    False for strings that cannot occur. Continuations are explored
    ``depth`` digits deep; a cut still open at that depth counts as closed.
    """
    if not splits_after(left, right):
        return False
    return _context_split(left, right, depth, admissible)


def is_splittable_in_context(
    s: AudioString, depth: int = DEFAULT_CONTEXT_DEPTH, admissible: Admissible = None
) -> bool:
    return any(
        splits_in_context(s[:k], s[k:], depth, admissible)
        for k in range(len(s) - 1, 0, -1)
        if s[k - 1] != s[k]
    )


def oracle_split_check(left: AudioString, right: AudioString, days: int) -> bool:
    """Brute-force split test: compare evolutions day by day up to ``days``."""
    if days < 1:
        raise ValueError("days must be >= 1")
    whole = left + right
    for _ in range(days + 1):
        if whole != left + right:
            return False
        whole, left, right = evolve(whole, 1), evolve(left, 1), evolve(right, 1)
    return True
