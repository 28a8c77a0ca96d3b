"""Decay matrix, growth constant, abundances and the exact characteristic polynomial."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Union

import numpy as np
from scipy.sparse.csgraph import connected_components

from .core import render
from .table import PeriodicTable

ABUNDANCE_SCALE = 1_000_000
DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000


class NotPrimitive(ValueError):
    pass


class NoConvergence(RuntimeError):
    pass


@dataclass(frozen=True)
class DecayMatrix:
    """``entries[i, j]`` counts element ``j+1`` in the one-day decay of element ``i+1``."""

    entries: np.ndarray
    strings: tuple

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def as_lists(self) -> List[List[int]]:
        return [[int(x) for x in row] for row in self.entries]


@dataclass(frozen=True)
class SpectralResult:
    lam: float
    # atoms per million, indexed like the table
    abundance: np.ndarray
    # sup-norm of v M - lam v for the unit-sum abundance vector v
    residual: float
    iterations: int
    side: str = "left"


def decay_matrix(table: PeriodicTable) -> DecayMatrix:
    n = len(table)
    m = np.zeros((n, n), dtype=np.int64)
    for e in table.elements:
        for p in e.products:
            m[e.id - 1, p - 1] += 1
    return DecayMatrix(m, tuple(e.string for e in table.elements))


def _is_primitive(block: np.ndarray) -> bool:
    """Irreducible and aperiodic: some power is entrywise positive.

    Wielandt's bound makes ``(k-1)**2 + 1`` the largest exponent worth
    trying; repeated boolean squaring reaches it in a few steps.
    """
    k = block.shape[0]
    a = (block > 0).astype(np.int64)
    bound = (k - 1) ** 2 + 1
    power = 1
    while power < bound:
        a = ((a @ a) > 0).astype(np.int64)
        power *= 2
    return bool(a.all())


def dominant_class(m: DecayMatrix) -> np.ndarray:
    """Indices of the strongly connected class that carries the growth rate.

    Checks that this class is primitive, that every other class grows more
    slowly, and that every element descends from it, which together make the
    dominant left eigenvector unique and strictly positive.
    """
    a = m.entries
    n_comp, labels = connected_components(a > 0, directed=True, connection="strong")
    radius = np.zeros(n_comp)
    for c in range(n_comp):
        idx = np.flatnonzero(labels == c)
        radius[c] = max(abs(np.linalg.eigvals(a[np.ix_(idx, idx)].astype(float))))
    top = int(np.argmax(radius))
    core = np.flatnonzero(labels == top)
    if np.sum(radius >= radius[top] - 1e-9) > 1:
        raise NotPrimitive("more than one class attains the spectral radius")
    if not _is_primitive(a[np.ix_(core, core)]):
        raise NotPrimitive("dominant class is periodic or reducible")
    reach = np.zeros(a.shape[0], dtype=bool)
    reach[core] = True
    frontier = reach.copy()
    while frontier.any():
        nxt = (a[frontier].sum(axis=0) > 0) & ~reach
        reach |= nxt
        frontier = nxt
    if not reach.all():
        raise NotPrimitive("some elements do not descend from the dominant class")
    return core


def dominant_eigenvalue(
    m: DecayMatrix, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> SpectralResult:
    """Power iteration for the growth rate and the long-run element frequencies.

    Frequencies are counts that decay forward, so they form the left
    eigenvector ``v M = lam v``.
    """
    dominant_class(m)
    a = m.entries.astype(float)
    v = np.full(m.n, 1.0 / m.n)
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = v @ a
        lam = w.sum()
        w /= lam
        if np.max(np.abs(w - v)) < tol:
            v = w
            break
        v = w
    else:
        raise NoConvergence(f"power iteration did not settle in {max_iter} steps")
    w = v @ a
    lam = float(w.sum())
    residual = float(np.max(np.abs(w - lam * v)))
    return SpectralResult(lam, v * ABUNDANCE_SCALE, residual, it)


def char_poly(m: Union[DecayMatrix, Sequence[Sequence[int]]]) -> List[int]:
    """Exact ``det(xI - M)`` by Berkowitz's division-free recurrence.

    Coefficients are returned from ``x**n`` down to the constant term. Each
    leading block is bordered by one row and column; its polynomial is
    multiplied by a Toeplitz matrix built from ``R A^k C``. The matrix is
    sparse, so products are taken row by row over the nonzero entries.
    """
    rows = m.as_lists() if isinstance(m, DecayMatrix) else [[int(x) for x in r] for r in m]
    n = len(rows)
    sparse = [[(j, x) for j, x in enumerate(r) if x] for r in rows]
    poly = [1]
    for r in range(n):
        # A_r is the leading r x r block; border it with column C, row R, corner a
        col = [rows[i][r] for i in range(r)]
        row = [(j, x) for j, x in sparse[r] if j < r]
        q = [1, -rows[r][r]]
        vec = col
        for _ in range(r):
            q.append(-sum(x * vec[j] for j, x in row))
            vec = [sum(x * vec[j] for j, x in sparse[i] if j < r) for i in range(r)]
        poly = [sum(q[k - j] * poly[j] for j in range(max(0, k - len(q) + 1), min(k, r) + 1))
                for k in range(r + 2)]
    return poly


def poly_eval(coeffs: Sequence[int], x: Union[int, Fraction]) -> Union[int, Fraction]:
    acc: Union[int, Fraction] = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def abundance_csv(table: PeriodicTable, result: SpectralResult) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["id", "string", "abundance"])
    order = sorted(range(len(table)), key=lambda i: (-result.abundance[i], i))
    for i in order:
        e = table.elements[i]
        out.writerow([e.id, render(e.string), f"{result.abundance[i]:.6f}"])
    return buf.getvalue()


def char_poly_text(coeffs: Sequence[int]) -> str:
    lines = [f"degree {len(coeffs) - 1}"]
    lines += [str(c) for c in coeffs]
    return "\n".join(lines) + "\n"
