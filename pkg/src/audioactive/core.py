"""Digit strings and the audioactive operator.

A string is held as a Python ``str`` with one code point per digit:
digit ``d`` is ``chr(48 + d)``. Digits 1-9 therefore look like themselves
("1211" is the string 1, 2, 1, 1) while larger, "exotic" digits stay single
symbols, so ten 5s describe themselves as the two-symbol string 10, 5.

The literal format used at every I/O boundary writes digits 1-9 as one
character and larger digits in parentheses: ``"31(12)"`` is 3, 1, 12.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

AudioString = str
RunEncoding = Tuple[Tuple[int, int], ...]

DEFAULT_MAX_LENGTH = 10_000_000

_TOKEN = re.compile(r"\((\d+)\)|([1-9])")
_RUN = re.compile(r"(.)\1*", re.DOTALL)


class LiteralError(ValueError):
    """Raised when a digit literal cannot be parsed."""


class LengthCapExceeded(RuntimeError):
    """Raised by :func:`evolve` when a string outgrows the configured cap."""

    def __init__(self, day: int, length: int, cap: int):
        super().__init__(f"length {length} exceeds cap {cap} on day {day}")
        self.day = day
        self.length = length
        self.cap = cap


class Sex(enum.Enum):
    FEMALE = "female"
    MALE = "male"


def sym(d: int) -> str:
    return chr(48 + d)


def val(c: str) -> int:
    return ord(c) - 48


def from_digits(digits: Iterable[int]) -> AudioString:
    out = []
    for d in digits:
        if d < 1:
            raise ValueError(f"digit {d} is not positive")
        out.append(chr(48 + d))
    return "".join(out)


def digits(s: AudioString) -> List[int]:
    return [ord(c) - 48 for c in s]


def parse(literal: str) -> AudioString:
    """Parse a digit literal such as ``"1211"`` or ``"31(12)"``."""
    literal = literal.strip()
    if not literal:
        raise LiteralError("empty literal")
    out = []
    pos = 0
    for m in _TOKEN.finditer(literal):
        if m.start() != pos:
            break
        out.append(int(m.group(1) or m.group(2)))
        pos = m.end()
    if pos != len(literal):
        raise LiteralError(f"malformed literal {literal!r} at position {pos}")
    if any(d < 1 for d in out):
        raise LiteralError(f"digits must be >= 1 in {literal!r}")
    return from_digits(out)


def render(s: AudioString) -> str:
    return "".join(c if "1" <= c <= "9" else f"({ord(c) - 48})" for c in s)


def run_encode(s: AudioString) -> RunEncoding:
    """Maximal runs of ``s`` as ``(char, count)`` pairs."""
    return tuple((ord(m.group(1)) - 48, m.end() - m.start()) for m in _RUN.finditer(s))


def _describe(m: re.Match) -> str:
    return chr(48 + m.end() - m.start()) + m.group(1)


def jhc(s: AudioString) -> AudioString:
    """One day of audioactive decay: each run ``a^m`` becomes ``m a``."""
    return _RUN.sub(_describe, s)


def evolve(s: AudioString, n: int, max_length: int = DEFAULT_MAX_LENGTH) -> AudioString:
    if n < 0:
        raise ValueError("n must be >= 0")
    for day in range(1, n + 1):
        nxt = jhc(s)
        if nxt == s:
            # only "22" is a fixed point; nothing further can change
            return s
        if len(nxt) > max_length:
            raise LengthCapExceeded(day, len(nxt), max_length)
        s = nxt
    return s


def max_run_length(s: AudioString) -> int:
    return max(m.end() - m.start() for m in _RUN.finditer(s))


@dataclass(frozen=True)
class PunctuatedChunk:
    """A chunk split into ``(count, char)`` pairs.

    ``lead`` is the dangling char of a pair whose count lies before the
    chunk (male chunks only); ``trail`` is a count whose char lies after it.
    """

    lead: Optional[int]
    pairs: Tuple[Tuple[int, int], ...]
    trail: Optional[int]

    def digits(self) -> List[int]:
        out = [] if self.lead is None else [self.lead]
        for count, char in self.pairs:
            out += (count, char)
        if self.trail is not None:
            out.append(self.trail)
        return out

    def string(self) -> AudioString:
        return from_digits(self.digits())

    def described_chars(self) -> Tuple[int, ...]:
        head = () if self.lead is None else (self.lead,)
        return head + tuple(char for _, char in self.pairs)


@dataclass(frozen=True)
class ParentResult:
    known: AudioString
    truncated_right: bool


def punctuate(s: AudioString, sex: Sex) -> PunctuatedChunk:
    d = digits(s)
    lead = None
    if sex is Sex.MALE:
        lead, d = d[0], d[1:]
    pairs = tuple((d[k], d[k + 1]) for k in range(0, len(d) - 1, 2))
    trail = d[-1] if len(d) % 2 else None
    return PunctuatedChunk(lead, pairs, trail)


def grammatically_correct(p: PunctuatedChunk) -> bool:
    """No two adjacent described chars are equal.

    A trailing count says nothing, since its char is unseen.
    """
    chars = p.described_chars()
    return all(a != b for a, b in zip(chars, chars[1:]))


def described_ok(s: AudioString, sex: Sex) -> bool:
    """``grammatically_correct(punctuate(s, sex))`` without building the chunk."""
    chars = s[0::2] if sex is Sex.MALE else s[1::2]
    return all(a != b for a, b in zip(chars, chars[1:]))


def parent_of_girl(s: AudioString) -> ParentResult:
    """Undo one day for a chunk that starts on a pair boundary."""
    known = "".join(s[k + 1] * (ord(s[k]) - 48) for k in range(0, len(s) - 1, 2))
    return ParentResult(known, len(s) % 2 == 1)


def parent_of_boy(s: AudioString) -> ParentResult:
    """Undo one day for a chunk whose first digit is a dangling char."""
    known = s[0] + "".join(s[k + 1] * (ord(s[k]) - 48) for k in range(1, len(s) - 1, 2))
    return ParentResult(known, len(s) % 2 == 0)


def parent(s: AudioString, sex: Sex) -> ParentResult:
    return parent_of_girl(s) if sex is Sex.FEMALE else parent_of_boy(s)
