"""Explicit covering polynomials and hyperplane families, each verified before return.

Every builder evaluates its result on every grid point and raises
:class:`ConstructionError` if the claimed property fails; an unverified
witness is never handed back.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from . import algebra
from .covers import ppc
from .errors import ConstructionError, InvalidSetError, OracleCapError, UnsupportedDomainError
from .grid import Grid, Point
from .poly import Poly, product
from .weightsets import WeightSet, t_set


def _grid_points(g: Grid) -> list[Point]:
    cap = algebra.max_points()
    if g.size > cap:
        raise OracleCapError(f"{g} has {g.size} points; verification cap is {cap}")
    return g.points()


def _require_uniform(g: Grid, what: str) -> None:
    if not g.uniform:
        raise UnsupportedDomainError(f"{what} needs a uniform grid")


@dataclass(frozen=True)
class HyperplaneFamily:
    """A family of degree-1 polynomials; its trace is the union of their zero sets."""

    forms: tuple[Poly, ...]

    def __len__(self) -> int:
        return len(self.forms)

    def trace(self, g: Grid) -> frozenset[Point]:
        return frozenset(p for p in _grid_points(g) if any(h(p) == 0 for h in self.forms))

    def to_json(self) -> list[list[dict]]:
        return [h.to_json() for h in self.forms]


def level_product(g: Grid, E: WeightSet) -> Poly:
    """``prod_{t in E} (x_1 + ... + x_n - t)``, vanishing exactly on the layers in ``E``."""
    _require_uniform(g, "level_product")
    if E.n_max != g.N:
        raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {g.N}")
    P = product((Poly.linear([1] * g.n, -t) for t in E), g.n)
    for p in _grid_points(g):
        if (P(p) == 0) != (g.weight(p) in E):
            raise ConstructionError(f"level product misbehaves at {p}")
    return P


def pairing_poly(n: int, i: int) -> Poly:
    """``(x1 - x2)(x3 - x4)...(x_{2i-1} - x_{2i})`` on the cube ``{0,1}^n``."""
    if not 0 <= 2 * i <= n:
        raise ValueError(f"need 0 <= 2i <= n, got n={n}, i={i}")
    P = product(
        (Poly.variable(n, 2 * k) - Poly.variable(n, 2 * k + 1) for k in range(i)), n
    )
    g = Grid.cube(n)
    T = t_set(n, i)
    for p in _grid_points(g):
        if sum(p) in T and P(p) != 0:
            raise ConstructionError(f"pairing polynomial does not vanish at {p}")
    for j in range(i, n - i + 1):
        x = pairing_point(n, i, j)
        if P(x) != 1:
            raise ConstructionError(f"pairing polynomial is {P(x)} at {x}")
    return P


def pairing_point(n: int, i: int, j: int) -> Point:
    """A weight-``j`` cube point where the pairing polynomial of order ``i`` equals 1.

    Each of the first ``i`` pairs gets ``(1, 0)``; the remaining ``j - i`` ones
    go after them.  (The plain prefix ``1^j 0^(n-j)`` does not work once
    ``j >= 2``: its first pair is ``(1, 1)``.)
    """
    if not i <= j <= n - i:
        raise ValueError(f"need i <= j <= n - i, got i={i}, j={j}, n={n}")
    x = [0] * n
    for t in range(i):
        x[2 * t] = 1
    for t in range(2 * i, 2 * i + j - i):
        x[t] = 1
    return tuple(x)


def _check_proper_cover(g: Grid, E: WeightSet, P: Poly) -> None:
    hit = [False] * (g.N + 1)
    for p in _grid_points(g):
        w = g.weight(p)
        v = P(p)
        if w in E and v != 0:
            raise ConstructionError(f"witness is nonzero at {p} on layer {w}")
        if v != 0:
            hit[w] = True
    missing = [j for j in range(g.N + 1) if j not in E and not hit[j]]
    if missing:
        raise ConstructionError(f"witness vanishes on whole layers {missing}")


def ppc_witness(g: Grid, E: WeightSet) -> Poly:
    """A polynomial of degree ``ppc(E)`` vanishing on ``E`` and on no other whole layer.

    Starts from zero and walks the layers outside ``E``; whenever the current
    polynomial still vanishes on a layer, the first basis element of the
    degree-``ppc`` vanishing space that is nonzero there is added with the
    smallest positive integer coefficient that keeps every earlier layer alive.
    Each earlier layer rules out at most one coefficient, so the search is
    finite and deterministic.
    """
    d = ppc(g, E)
    if E.is_full():
        raise InvalidSetError("the full interval has no proper cover")
    points = _grid_points(g)
    layers: list[list[Point]] = [[] for _ in range(g.N + 1)]
    for p in points:
        layers[g.weight(p)].append(p)
    basis = algebra.vanishing_basis(g, d, (p for j in E for p in layers[j]))
    P = Poly(g.n)
    alive: dict[int, Point] = {}  # layer -> a point where P is nonzero
    for j in range(g.N + 1):
        if j in E:
            continue
        hit = next((p for p in layers[j] if P(p) != 0), None)
        if hit is not None:
            alive[j] = hit
            continue
        pick = next(((B, p) for B in basis for p in layers[j] if B(p) != 0), None)
        if pick is None:
            raise ConstructionError(f"every degree-{d} polynomial vanishing on E vanishes on layer {j}")
        B, p = pick
        for c in itertools.count(1):
            cand = P + c * B
            if all(cand(a) != 0 for a in alive.values()):
                break
        P = cand
        alive[j] = p
    P = P.integer_normalized()
    if P.degree != d:
        raise ConstructionError(f"witness has degree {P.degree}, expected {d}")
    _check_proper_cover(g, E, P)
    return P


def ehc_t2_family(n: int) -> HyperplaneFamily:
    """Two hyperplanes whose union meets ``{0,1}^n`` exactly in the layers ``0, 1, n-1, n``."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    h0 = [0] * n
    h0[1] = -(n - 2)
    for i in range(2, n):
        h0[i] = 1
    h1 = [1] * n
    h1[0] = -(n - 3)
    fam = HyperplaneFamily((Poly.linear(h0), Poly.linear(h1, -1)))
    g = Grid.cube(n)
    expected = frozenset(p for p in _grid_points(g) if sum(p) in t_set(n, 2))
    got = fam.trace(g)
    if got != expected:
        raise ConstructionError(f"family trace differs from T_(n,2) at {sorted(got ^ expected)[:4]}")
    return fam


def ehc_t1_form(g: Grid, search: int = 8) -> Poly:
    """A linear form whose zero set on ``g`` is exactly the origin and the far corner.

    Coefficient vectors summing to zero against the corner are tried by
    increasing max-norm, then lexicographically.  No such form exists in one
    dimension, nor when the axis lengths ``k_i - 1`` share a factor (the line
    through the two corners then passes through further grid points).
    """
    _require_uniform(g, "ehc_t1_form")
    if g.n < 2:
        raise ConstructionError("a single hyperplane in one dimension holds at most one point")
    corner = tuple(k - 1 for k in g.dims)
    common = 0
    for c in corner:
        common = gcd(common, c)
    if common > 1:
        mid = tuple(c // common for c in corner)
        raise ConstructionError(
            f"every hyperplane through the origin and {corner} also contains {mid}"
        )
    points = _grid_points(g)
    for norm in range(1, search + 1):
        for a in itertools.product(range(-norm, norm + 1), repeat=g.n):
            if max(map(abs, a)) != norm or sum(x * c for x, c in zip(a, corner)):
                continue
            zeros = [p for p in points if sum(x * y for x, y in zip(a, p)) == 0]
            if len(zeros) == 2:
                return Poly.linear(a).integer_normalized()
    raise ConstructionError(f"no corner form with coefficients up to {search}")


def family_from_forms(forms: Sequence[Poly]) -> HyperplaneFamily:
    if any(h.degree != 1 for h in forms):
        raise ValueError("hyperplane family members must have degree 1")
    return HyperplaneFamily(tuple(forms))
