"""Brute-force ground truth by exact linear algebra on evaluation matrices.

Polynomials of degree at most ``d`` are represented, as functions on a grid,
by their coefficients on the footprint monomials (per-axis exponent below the
axis size).  Those monomials are linearly independent as functions on the grid,
so a point lies in the degree-``d`` Zariski closure of ``S`` exactly when its
evaluation row lies in the row space of the evaluation matrix of ``S``.
"""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence

from .errors import InvalidSetError, OracleCapError
from .grid import Grid, Point
from .linalg import ExactMatrix, RowSpace
from .poly import Poly
from .weightsets import WeightSet

DEFAULT_MAX_POINTS = 20_000
DEFAULT_MAX_MONOMIALS = 20_000


def max_points() -> int:
    return int(os.environ.get("WDC_MAX_GRID_POINTS", DEFAULT_MAX_POINTS))


def _check_cap(g: Grid, n_monomials: int | None = None) -> None:
    cap = max_points()
    if g.size > cap:
        raise OracleCapError(f"{g} has {g.size} points; the algebraic oracle cap is {cap}")
    if n_monomials is not None and n_monomials > DEFAULT_MAX_MONOMIALS:
        raise OracleCapError(f"{n_monomials} footprint monomials exceed the cap {DEFAULT_MAX_MONOMIALS}")


def footprint_monomials(g: Grid, d: int) -> list[tuple[int, ...]]:
    """Exponent vectors with ``e_i <= k_i - 1`` and total degree ``<= d``, graded order."""
    if not 0 <= d <= g.N:
        raise ValueError(f"degree {d} outside [0, {g.N}]")
    return [e for e in _all_footprint(g) if sum(e) <= d]


@lru_cache(maxsize=64)
def _all_footprint(g: Grid) -> tuple[tuple[int, ...], ...]:
    monos = itertools.product(*(range(k) for k in g.dims))
    return tuple(sorted(monos, key=lambda e: (sum(e), tuple(-x for x in e))))


def evaluation_row(point: Sequence[int], monomials: Sequence[Sequence[int]]) -> list[int]:
    row = []
    for e in monomials:
        v = 1
        for x, k in zip(point, e):
            if k:
                v *= x ** k
        row.append(v)
    return row


def evaluation_matrix(points: Iterable[Sequence[int]], monomials: Sequence[Sequence[int]]) -> ExactMatrix:
    return ExactMatrix([evaluation_row(p, monomials) for p in points], len(monomials))


class _GridTables:
    """Per-grid caches: points, layers and full evaluation rows."""

    def __init__(self, g: Grid):
        self.grid = g
        self.points = g.points()
        self.index = {p: i for i, p in enumerate(self.points)}
        self.weights = [g.weight(p) for p in self.points]
        self.layers: list[list[int]] = [[] for _ in range(g.N + 1)]
        for i, w in enumerate(self.weights):
            self.layers[w].append(i)
        self.monomials = _all_footprint(g)
        self.rows = [evaluation_row(p, self.monomials) for p in self.points]
        self._ncols = {}

    def ncols(self, d: int) -> int:
        """Footprint monomials are graded, so degree ``<= d`` is a column prefix."""
        if d not in self._ncols:
            self._ncols[d] = sum(1 for e in self.monomials if sum(e) <= d)
        return self._ncols[d]

    def row(self, i: int, d: int) -> list[int]:
        return self.rows[i][: self.ncols(d)]

    def indices(self, S: Iterable[Sequence[int]]) -> list[int]:
        out = []
        for p in S:
            p = tuple(p)
            if p not in self.index:
                raise ValueError(f"point {p} is not on {self.grid}")
            out.append(self.index[p])
        return out

    def layer_indices(self, E: WeightSet) -> list[int]:
        if E.n_max != self.grid.N:
            raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {self.grid.N}")
        return [i for j in E for i in self.layers[j]]

    def row_space(self, d: int, idx: Iterable[int]) -> RowSpace:
        space = RowSpace(self.ncols(d))
        for i in idx:
            space.add(self.row(i, d))
        return space


@lru_cache(maxsize=32)
def _build_tables(g: Grid) -> _GridTables:
    return _GridTables(g)


def _tables(g: Grid) -> _GridTables:
    # the full footprint has one monomial per grid point
    _check_cap(g, g.size)
    return _build_tables(g)


def weight_points(g: Grid, E: WeightSet) -> frozenset[Point]:
    """The weight-determined point set of ``E``."""
    t = _tables(g)
    return frozenset(t.points[i] for i in t.layer_indices(E))


def _check_degree(g: Grid, d: int) -> None:
    if not 0 <= d <= g.N:
        raise ValueError(f"degree {d} outside [0, {g.N}]")


def z_closure(g: Grid, d: int, S: Iterable[Sequence[int]]) -> frozenset[Point]:
    """Common zeros on ``g`` of all degree-``<= d`` polynomials vanishing on ``S``."""
    _check_degree(g, d)
    t = _tables(g)
    idx = set(t.indices(S))
    space = t.row_space(d, sorted(idx))
    inside = [i for i in range(len(t.points)) if i in idx or t.row(i, d) in space]
    return frozenset(t.points[i] for i in inside)


def separation_degree(g: Grid, S: Iterable[Sequence[int]], a: Sequence[int]) -> int | None:
    """Least ``d`` whose Z-closure of ``S`` misses ``a``; ``None`` when ``a`` is in ``S``."""
    t = _tables(g)
    idx = t.indices(S)
    target = t.indices([a])[0]
    if target in set(idx):
        return None
    for d in range(g.N + 1):
        if t.row(target, d) not in t.row_space(d, idx):
            return d
    raise AssertionError("degree N separates every point")


def in_z_closure_by_rank(g: Grid, d: int, S: Iterable[Sequence[int]], a: Sequence[int]) -> bool:
    """Membership by the rank comparison ``rank(M_S) == rank(M_S + row_a)``."""
    _check_degree(g, d)
    monos = footprint_monomials(g, d)
    S = list(S)
    if not S:
        return False
    m = evaluation_matrix(S, monos)
    return m.rank() == m.with_row(evaluation_row(a, monos)).rank()


def z_star_closure(g: Grid, d: int, E: WeightSet) -> WeightSet:
    """Largest weight-determined set inside the degree-``d`` Z-closure of ``E``."""
    _check_degree(g, d)
    t = _tables(g)
    space = t.row_space(d, t.layer_indices(E))
    keep = [
        j for j in range(g.N + 1)
        if j in E or all(t.row(i, d) in space for i in t.layers[j])
    ]
    return WeightSet.of(g.N, keep)


@dataclass(frozen=True)
class HilbertProfile:
    d: int
    value: int
    r_d: int | None = None
    ell_d: int | None = None
    jplus: tuple[int, ...] | None = None
    jminus: tuple[int, ...] | None = None


def _profile_fields(d: int, E: WeightSet) -> dict:
    low = set(range(d + 1))
    jplus = tuple(sorted(j for j in E if j > d))
    # j^-_1 is the largest element of [0, d] \ E
    jminus = tuple(sorted((j for j in low if j not in E), reverse=True))
    return dict(r_d=len(jplus), ell_d=len(jminus), jplus=jplus, jminus=jminus)


def hilbert_fn(g: Grid, d: int, S) -> HilbertProfile:
    """Affine Hilbert function ``H_d(S)`` as an exact rank.

    ``S`` is a point collection or a :class:`WeightSet`; for a weight set the
    profile also carries the counts and enumerations used by the closed form.
    """
    _check_degree(g, d)
    t = _tables(g)
    if isinstance(S, WeightSet):
        space = t.row_space(d, t.layer_indices(S))
        return HilbertProfile(d, space.rank, **_profile_fields(d, S))
    space = t.row_space(d, t.indices(S))
    return HilbertProfile(d, space.rank)


def hilbert_formula(n: int, d: int, E: WeightSet) -> int:
    """Closed form for ``H_d`` of a symmetric subset of ``{0,1}^n``."""
    if E.n_max != n:
        raise ValueError("set must live in [0, n]")
    f = _profile_fields(d, E)
    value = sum(comb(n, j) for j in E if j <= d)
    for jp, jm in zip(f["jplus"], f["jminus"]):
        value += min(comb(n, jp), comb(n, jm))
    return value


def vanishing_basis(g: Grid, d: int, S: Iterable[Sequence[int]]) -> list[Poly]:
    """Integer basis of the degree-``<= d`` polynomials (footprint span) vanishing on ``S``."""
    _check_degree(g, d)
    t = _tables(g)
    idx = t.indices(S)
    ncols = t.ncols(d)
    monos = t.monomials[:ncols]
    m = ExactMatrix([t.row(i, d) for i in idx], ncols)
    out = []
    for vec in m.nullspace():
        out.append(Poly(g.n, {e: c for e, c in zip(monos, vec) if c}).integer_normalized())
    return out


def _proper_set(g: Grid, E: WeightSet) -> None:
    if E.n_max != g.N:
        raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {g.N}")
    if E.is_full():
        raise InvalidSetError("the full interval has no proper cover")


def epc_oracle(g: Grid, E: WeightSet) -> int:
    """Least ``d`` whose Z-closure of ``E`` is ``E`` itself (exact polynomial cover degree)."""
    _proper_set(g, E)
    t = _tables(g)
    idx = set(t.layer_indices(E))
    others = [i for i in range(len(t.points)) if i not in idx]
    for d in range(g.N + 1):
        space = t.row_space(d, sorted(idx))
        if not any(t.row(i, d) in space for i in others):
            return d
    raise AssertionError("the degree-N closure of any set is the set itself")


def pc_oracle(g: Grid, E: WeightSet) -> int:
    """``min{d : Z*-closure(E) != [0, N]}`` by brute force."""
    _proper_set(g, E)
    return next(d for d in range(g.N + 1) if not z_star_closure(g, d, E).is_full())


def ppc_oracle(g: Grid, E: WeightSet) -> int:
    """``min{d : Z*-closure(E) == E}`` by brute force."""
    _proper_set(g, E)
    return next(d for d in range(g.N + 1) if z_star_closure(g, d, E) == E)
