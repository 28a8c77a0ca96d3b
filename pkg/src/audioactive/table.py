"""Ab initio derivation of the common elements and the transuranic families."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .core import AudioString, jhc, parse, render, sym, val
from .splitting import split_atoms

HOLE = "*"
DEFAULT_ATOM_CAP = 10_000
DEFAULT_DAY_CAP = 100


class NoClosure(RuntimeError):
    pass


class NoCycle(RuntimeError):
    pass


class UnknownAtom(KeyError):
    pass


@dataclass(frozen=True)
class Element:
    id: int
    string: AudioString
    products: Tuple[int, ...]


@dataclass(frozen=True)
class TransuranicTemplate:
    """An atom pattern with one slot standing for any digit >= 4."""

    pattern: str

    def instantiate(self, n: int) -> AudioString:
        return self.pattern.replace(HOLE, sym(n))

    def match(self, s: AudioString) -> Optional[int]:
        """The digit filling the hole if ``s`` is an instance, else None."""
        if len(s) != len(self.pattern):
            return None
        k = self.pattern.index(HOLE)
        if s[k] <= "3" or s[:k] != self.pattern[:k] or s[k + 1:] != self.pattern[k + 1:]:
            return None
        return val(s[k])

    def literal(self) -> str:
        return HOLE.join(render(part) for part in self.pattern.split(HOLE))

    @classmethod
    def from_literal(cls, literal: str) -> "TransuranicTemplate":
        head, tail = literal.split(HOLE)
        return cls((parse(head) if head else "") + HOLE + (parse(tail) if tail else ""))


@dataclass(frozen=True)
class Common:
    id: int


@dataclass(frozen=True)
class Transuranic:
    family: int
    n: int


@dataclass(frozen=True)
class Unstable:
    pass


Classification = Union[Common, Transuranic, Unstable]


@dataclass
class PeriodicTable:
    seed: AudioString
    elements: List[Element]
    transuranic: List[TransuranicTemplate] = field(default_factory=list)

    def __post_init__(self):
        self._by_string = {e.string: e for e in self.elements}

    def __len__(self) -> int:
        return len(self.elements)

    def __getitem__(self, element_id: int) -> Element:
        return self.elements[element_id - 1]

    def lookup(self, s: AudioString) -> Optional[Element]:
        return self._by_string.get(s)

    def strings(self) -> List[AudioString]:
        return [e.string for e in self.elements]

    def to_json(self) -> dict:
        return {
            "seed": render(self.seed),
            "elements": [
                {"id": e.id, "string": render(e.string), "products": list(e.products)}
                for e in self.elements
            ],
            "transuranic": [{"pattern": t.literal()} for t in self.transuranic],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1)

    @classmethod
    def from_json(cls, data: dict) -> "PeriodicTable":
        elements = [
            Element(e["id"], parse(e["string"]), tuple(e["products"])) for e in data["elements"]
        ]
        templates = [TransuranicTemplate.from_literal(t["pattern"]) for t in data.get("transuranic", [])]
        return cls(parse(data["seed"]), elements, templates)


def _recurrent_core(graph: Dict[AudioString, List[AudioString]]) -> set:
    """Drop atoms that nothing in the remaining set decays into, until stable."""
    alive = set(graph)
    indegree = Counter(p for a in alive for p in graph[a])
    stack = [a for a in alive if indegree[a] == 0]
    while stack:
        a = stack.pop()
        if a not in alive:
            continue
        alive.discard(a)
        for p in graph[a]:
            indegree[p] -= 1
            if indegree[p] == 0 and p in alive:
                stack.append(p)
    return alive


def derive_common_elements(seed: AudioString = "1", atom_cap: int = DEFAULT_ATOM_CAP) -> PeriodicTable:
    """Close the seed's atoms under one-day decay and keep the recurrent ones.

    Atoms carrying a digit >= 4 belong to the transuranic families and are
    left out; the common elements decay only into each other.
    """
    if not seed or seed.strip("123"):
        raise ValueError("seed must be a nonempty string over {1,2,3}")
    graph: Dict[AudioString, List[AudioString]] = {}
    pending = list(split_atoms(seed))
    while pending:
        atom = pending.pop()
        if atom in graph:
            continue
        if len(graph) >= atom_cap:
            raise NoClosure(f"more than {atom_cap} atoms without closure")
        graph[atom] = products = split_atoms(jhc(atom))
        pending.extend(p for p in products if p not in graph)
    core = {a for a in _recurrent_core(graph) if max(a) <= "3"}
    ordered = sorted(core)
    ids = {s: i + 1 for i, s in enumerate(ordered)}
    elements = []
    for s in ordered:
        missing = [p for p in graph[s] if p not in ids]
        if missing:
            raise NoClosure(f"{render(s)} decays outside the table: {render(missing[0])}")
        elements.append(Element(ids[s], s, tuple(ids[p] for p in graph[s])))
    return PeriodicTable(seed, elements, derive_transuranic(4))


def derive_transuranic(n: int = 4, day_cap: int = DEFAULT_DAY_CAP) -> List[TransuranicTemplate]:
    """Follow the single-digit string ``n`` until its exotic atoms cycle."""
    if n < 4:
        raise ValueError("transuranic digit must be >= 4")
    exotic: Tuple[AudioString, ...] = (sym(n),)
    history: List[Tuple[AudioString, ...]] = []
    for _ in range(day_cap):
        if exotic in history:
            cycle = history[history.index(exotic):]
            atoms = sorted({a for step in cycle for a in step})
            return [TransuranicTemplate(a.replace(sym(n), HOLE)) for a in atoms]
        history.append(exotic)
        # atoms evolve independently, so the common side products can be dropped
        exotic = tuple(p for a in exotic for p in split_atoms(jhc(a)) if max(p) > "3")
    raise NoCycle(f"no transuranic cycle for n={n} within {day_cap} days")


def classify(a: AudioString, table: PeriodicTable) -> Classification:
    e = table.lookup(a)
    if e is not None:
        return Common(e.id)
    for family, t in enumerate(table.transuranic):
        n = t.match(a)
        if n is not None:
            return Transuranic(family, n)
    return Unstable()


def decay_products(e: Element, table: PeriodicTable) -> Counter:
    out = Counter()
    for atom in split_atoms(jhc(e.string)):
        found = table.lookup(atom)
        if found is None:
            raise UnknownAtom(render(atom))
        out[found.id] += 1
    return out
