"""Closed-form covering numbers and certifying degrees of weight-determined sets.

These formulas hold on strictly unimodal uniform grids (and, for the
hyperplane quantities, on the Boolean cube only); every function refuses other
grids instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import InvalidSetError, UnsupportedDomainError
from .grid import Grid, is_su2, require_su2
from .weightsets import WeightSet, is_admitting, max_tail_index, t_set


def _check(g: Grid, E: WeightSet, what: str) -> None:
    require_su2(g, what)
    if E.n_max != g.N:
        raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {g.N}")
    if E.is_full():
        raise InvalidSetError(f"{what}: the full interval [0, {g.N}] has no nontrivial cover")


def _cube(n) -> Grid:
    if isinstance(n, Grid):
        if not n.is_cube:
            raise UnsupportedDomainError(f"hyperplane cover formulas are known only for the Boolean cube, not {n}")
        return n
    return Grid.cube(n)


def pc(g: Grid, E: WeightSet) -> int:
    """Least degree of a polynomial vanishing on ``E`` but not on the whole grid."""
    _check(g, E, "PC")
    for d in range(g.N + 1):
        if is_admitting(g.N, d, E).witnessed:
            return d
    raise AssertionError("a proper subset is always N-admitting")


def ppc(g: Grid, E: WeightSet) -> int:
    """Least degree of a polynomial vanishing on ``E`` and on no whole layer outside it."""
    _check(g, E, "PPC")
    return len(E) - max_tail_index(E)


def cert_deg(g: Grid, E: WeightSet) -> int:
    """Certifying degree; it coincides with :func:`pc` on these grids."""
    _check(g, E, "certifying degree")
    return pc(g, E)


def hc_cube(n, E: WeightSet) -> int:
    return pc(_cube(n), E)


def phc_cube(n, E: WeightSet) -> int:
    return ppc(_cube(n), E)


def epc_cube(n, E: WeightSet) -> int:
    """Exact polynomial cover degree on the cube; other grids need ``algebra.epc_oracle``."""
    return ppc(_cube(n), E)


def has_corner_form(g: Grid) -> bool:
    """Whether a single hyperplane meets ``g`` in exactly the origin and the far corner."""
    if not g.uniform or g.n < 2:
        return False
    k = 0
    for d in g.dims:
        k = gcd(k, d - 1)
    return k == 1


@dataclass(frozen=True)
class EhcBounds:
    """Bounds on the minimum exact hyperplane cover size.

    ``status`` is ``"proved"`` when ``exact`` is set, ``"conjectured"`` when the
    only claim is the conjectured value, and ``"open"`` otherwise.
    """

    lower: int
    upper: int
    exact: int | None
    status: str
    conjectured: int | None = None


def ehc_bounds(g: Grid, E: WeightSet) -> EhcBounds:
    """Proved bounds on the exact hyperplane cover size, never a guess.

    Off strictly unimodal uniform grids only the trivial bounds are given:
    one hyperplane per layer (or per point on a nonuniform grid).
    """
    if E.n_max != g.N:
        raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {g.N}")
    if E.is_full():
        raise InvalidSetError("the full interval has no exact cover")
    size = len(E)
    if not g.uniform:
        sizes = g.layer_sizes
        upper = sum(sizes[j] for j in E)
        lower = min(size, 1)
        status = "proved" if lower == upper else "open"
        return EhcBounds(lower, upper, lower if lower == upper else None, status)
    # exact covers are proper covers, so PPC is a lower bound
    lower = ppc(g, E) if is_su2(g) else min(size, 1)
    upper = size
    cube_t2 = g.is_cube and g.N >= 4 and t_set(g.N, 2) <= E
    if cube_t2:
        upper = size - 2
    elif t_set(g.N, 1) <= E and has_corner_form(g):
        upper = size - 1
    if lower == upper:
        return EhcBounds(lower, upper, lower, "proved")
    if cube_t2:
        return EhcBounds(lower, upper, None, "conjectured", size - 2)
    return EhcBounds(lower, upper, None, "open")
