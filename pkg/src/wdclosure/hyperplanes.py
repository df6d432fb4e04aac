"""Brute-force ground truth for hyperplane covers of small grids.

Any hyperplane meets the grid in ``F ∩ G`` for the flat ``F`` spanned by the
points it contains, and conversely every proper flat spanned by grid points is
cut out on the grid by some hyperplane (tilt a hyperplane through ``F`` away
from the finitely many grid points off ``F``).  So hyperplane families reduce to
families of such *sections*, and every cover question below becomes an exact
set-cover search over them.
"""
from __future__ import annotations

import heapq
import itertools
import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from . import algebra
from .errors import InvalidSetError, OracleCapError
from .grid import Grid, Point
from .linalg import ExactMatrix
from .poly import Poly
from .weightsets import WeightSet

DEFAULT_MAX_POINTS = 40
DEFAULT_MAX_DEPTH = 6


def max_points() -> int:
    return int(os.environ.get("WDC_MAX_SECTION_POINTS", DEFAULT_MAX_POINTS))


@dataclass(frozen=True)
class FlatSection:
    """Grid trace of a proper flat spanned by grid points.

    ``mask`` has bit ``i`` set for the ``i``-th grid point in canonical order;
    ``normals`` spans the integer vectors orthogonal to the flat and ``base``
    is one of its points.
    """

    points: frozenset[Point]
    dim: int
    mask: int = field(repr=False)
    normals: tuple[tuple[int, ...], ...] = field(repr=False)
    base: Point = field(repr=False)

    def form(self, g: Grid) -> Poly:
        return realizing_form(g, self)


class _SectionTables:
    def __init__(self, g: Grid, cap: int):
        if g.size > cap:
            raise OracleCapError(f"{g} has {g.size} points; the hyperplane oracle cap is {cap}")
        self.grid = g
        self.points = g.points()
        self.index = {p: i for i, p in enumerate(self.points)}
        self.full = (1 << len(self.points)) - 1
        self.layer_masks = [0] * (g.N + 1)
        for i, p in enumerate(self.points):
            self.layer_masks[g.weight(p)] |= 1 << i
        self.sections = _enumerate(g, self.points)
        self.masks = [s.mask for s in self.sections]

    def mask_of(self, S: Iterable[Sequence[int]]) -> int:
        m = 0
        for p in S:
            p = tuple(p)
            if p not in self.index:
                raise ValueError(f"point {p} is not on {self.grid}")
            m |= 1 << self.index[p]
        return m

    def weight_mask(self, E: WeightSet) -> int:
        if E.n_max != self.grid.N:
            raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {self.grid.N}")
        m = 0
        for j in E:
            m |= self.layer_masks[j]
        return m

    def points_of(self, mask: int) -> frozenset[Point]:
        return frozenset(p for i, p in enumerate(self.points) if mask >> i & 1)


@lru_cache(maxsize=16)
def _tables(g: Grid, cap: int) -> _SectionTables:
    return _SectionTables(g, cap)


def _get(g: Grid, cap: int | None) -> _SectionTables:
    return _tables(g, max_points() if cap is None else cap)


def _trace(points: Sequence[Point], base: Point, normals: Sequence[Sequence[int]]) -> int:
    m = 0
    for i, p in enumerate(points):
        diff = [x - b for x, b in zip(p, base)]
        if all(sum(c * v for c, v in zip(row, diff)) == 0 for row in normals):
            m |= 1 << i
    return m


def _enumerate(g: Grid, points: list[Point]) -> list[FlatSection]:
    n = g.n
    found: dict[int, FlatSection] = {}
    frontier: list[tuple[int, list[int]]] = []
    identity = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    for i, p in enumerate(points):
        frontier.append((1 << i, [i]))
        found[1 << i] = FlatSection(frozenset([p]), 0, 1 << i, identity, p)
    for dim in range(1, n):
        nxt: list[tuple[int, list[int]]] = []
        for mask, basis in frontier:
            done = mask
            b0 = points[basis[0]]
            for q in range(len(points)):
                if done >> q & 1:
                    continue
                new_basis = basis + [q]
                dirs = [[x - y for x, y in zip(points[b], b0)] for b in new_basis[1:]]
                normals = tuple(tuple(v) for v in ExactMatrix(dirs, n).nullspace())
                child = _trace(points, b0, normals)
                done |= child
                if child in found:
                    continue
                found[child] = FlatSection(
                    frozenset(points[i] for i in range(len(points)) if child >> i & 1),
                    dim, child, normals, b0,
                )
                if dim < n - 1:
                    nxt.append((child, new_basis))
        frontier = nxt
    return sorted(found.values(), key=lambda s: (-len(s.points), sorted(points.index(p) for p in s.points)))


def enumerate_sections(g: Grid, cap: int | None = None) -> list[FlatSection]:
    """All distinct grid traces of proper flats spanned by grid points."""
    return list(_get(g, cap).sections)


def realizing_form(g: Grid, section: FlatSection, search: int = 64) -> Poly:
    """Integer linear form whose zero set on ``g`` is exactly ``section``.

    Normal vectors are tried as integer combinations of the flat's normal basis
    by increasing max-norm, then lexicographically.
    """
    points = g.points()
    target = section.mask
    m = len(section.normals)
    for bound in range(1, search + 1):
        for lam in itertools.product(range(-bound, bound + 1), repeat=m):
            if max(map(abs, lam)) != bound:
                continue
            c = [sum(l * row[k] for l, row in zip(lam, section.normals)) for k in range(g.n)]
            if not any(c):
                continue
            if _trace(points, section.base, [c]) == target:
                const = -sum(ci * bi for ci, bi in zip(c, section.base))
                return Poly.linear(c, const).integer_normalized()
    raise AssertionError(f"no realizing hyperplane found for {sorted(section.points)}")


# ---------------------------------------------------------------- set cover


class _Cover:
    """Exact minimum set cover by depth-first branch and bound.

    Branches on the uncovered element with the fewest candidate sets.
    ``allowed(extra_mask)`` is an optional side constraint on the union of the
    chosen sets' parts outside the universe; it must be monotone (once
    violated, stays violated).
    """

    def __init__(self, universe: int, sets: list[int], outside: list[int] | None = None,
                 allowed: Callable[[int], bool] | None = None):
        self.universe = universe
        self.sets = sets
        self.outside = outside or [0] * len(sets)
        self.allowed = allowed
        self.by_elem: dict[int, list[int]] = {}
        bits = universe
        while bits:
            low = bits & -bits
            e = low.bit_length() - 1
            self.by_elem[e] = sorted(
                (k for k, s in enumerate(sets) if s >> e & 1),
                key=lambda k: -(sets[k] & universe).bit_count(),
            )
            bits ^= low
        self.max_size = max(((s & universe).bit_count() for s in sets), default=0)
        self._failed: dict[tuple[int, int], int] = {}

    def feasible(self, k: int) -> list[int] | None:
        """A cover of size ``<= k`` as set indices, or ``None``."""
        self._failed.clear()
        return self._search(self.universe, 0, k)

    def _search(self, uncovered: int, out: int, k: int) -> list[int] | None:
        if not uncovered:
            return []
        need = uncovered.bit_count()
        if k == 0 or k * self.max_size < need:
            return None
        key = (uncovered, out)
        if self._failed.get(key, -1) >= k:
            return None
        if k > 1 and sum(heapq.nlargest(k, ((s & uncovered).bit_count() for s in self.sets))) < need:
            self._failed[key] = max(k, self._failed.get(key, -1))
            return None
        best_e, best_list = None, None
        bits = uncovered
        while bits:
            low = bits & -bits
            e = low.bit_length() - 1
            cands = self.by_elem[e]
            if best_list is None or len(cands) < len(best_list):
                best_e, best_list = e, cands
                if len(cands) <= 1:
                    break
            bits ^= low
        if not best_list:
            self._failed[key] = max(k, self._failed.get(key, -1))
            return None
        for idx in best_list:
            new_out = out | self.outside[idx]
            if self.allowed is not None and new_out != out and not self.allowed(new_out):
                continue
            rest = self._search(uncovered & ~self.sets[idx], new_out, k - 1)
            if rest is not None:
                return [idx] + rest
        self._failed[key] = max(k, self._failed.get(key, -1))
        return None

    def minimum(self, limit: int, start: int = 1) -> list[int] | None:
        """Smallest cover of size ``<= limit`` or ``None``.

        ``start`` must be a known lower bound; sizes below it are not tried.
        """
        if not self.universe:
            return []
        for k in range(max(start, 1), limit + 1):
            found = self.feasible(k)
            if found is not None:
                return found
        return None


def _maximal(parts: Iterable[int]) -> list[int]:
    """Drop duplicates and sets contained in another set."""
    uniq = sorted(set(p for p in parts if p), key=lambda m: -m.bit_count())
    kept: list[int] = []
    for m in uniq:
        if not any(m & ~k == 0 for k in kept):
            kept.append(m)
    return kept


def _axis_blocks(g: Grid) -> list[list[int]]:
    """Groups of axes that may be permuted without changing the grid or weights."""
    blocks: dict[tuple[int, ...], list[int]] = {}
    for i in range(g.n):
        blocks.setdefault(g.axis_levels(i), []).append(i)
    return [b for b in blocks.values() if len(b) > 1]


def _canonical(p: Point, blocks: list[list[int]]) -> Point:
    q = list(p)
    for b in blocks:
        vals = sorted((p[i] for i in b), reverse=True)
        for i, v in zip(b, vals):
            q[i] = v
    return tuple(q)


def _is_invariant(t: _SectionTables, mask: int, blocks: list[list[int]]) -> bool:
    for b in blocks:
        for i, j in zip(b, b[1:]):
            for idx, p in enumerate(t.points):
                if mask >> idx & 1:
                    q = list(p)
                    q[i], q[j] = q[j], q[i]
                    if not mask >> t.index[tuple(q)] & 1:
                        return False
    return True


def _cover_avoiding(t: _SectionTables, S: int, a: int, limit: int, start: int = 1) -> list[int] | None:
    parts = _maximal(m & S for m in t.masks if not m >> a & 1)
    return _Cover(S, parts).minimum(limit, start)


def h_closure(g: Grid, d: int, S: Iterable[Sequence[int]], *, cap: int | None = None,
              max_depth: int = DEFAULT_MAX_DEPTH, algebraic_bound: bool = False) -> frozenset[Point]:
    """Common zeros of all products of at most ``d`` affine forms vanishing on ``S``.

    A point ``a`` is outside exactly when at most ``d`` sections cover ``S``
    while avoiding ``a``.  With ``algebraic_bound`` the search for ``a`` starts
    at the least degree whose Z-closure of ``S`` misses ``a`` (a product of
    fewer forms would be a lower-degree polynomial doing the same), and points
    that no degree ``<= d`` separates are kept without searching.
    """
    if not 0 <= d <= g.N:
        raise ValueError(f"degree {d} outside [0, {g.N}]")
    t = _get(g, cap)
    S = [tuple(p) for p in S]
    s_mask = t.mask_of(S)
    size = s_mask.bit_count()
    depth = min(d, size)
    if depth > max_depth:
        raise OracleCapError(f"search depth {depth} exceeds the configured limit {max_depth}")
    blocks = _axis_blocks(g)
    symmetric = bool(blocks) and _is_invariant(t, s_mask, blocks)
    result = s_mask
    verdict: dict[Point, bool] = {}
    for i, p in enumerate(t.points):
        if s_mask >> i & 1:
            continue
        key = _canonical(p, blocks) if symmetric else p
        if key not in verdict:
            start = 1
            if algebraic_bound:
                start = algebra.separation_degree(g, S, key)
            if not s_mask:
                verdict[key] = False
            elif start > depth:
                verdict[key] = True
            else:
                verdict[key] = _cover_avoiding(t, s_mask, t.index[key], depth, start) is None
        if verdict[key]:
            result |= 1 << i
    return t.points_of(result)


def _proper(g: Grid, E: WeightSet) -> None:
    if E.n_max != g.N:
        raise ValueError(f"set lives in [0, {E.n_max}] but the grid has N = {g.N}")
    if E.is_full():
        raise InvalidSetError("the full interval has no proper cover")


def _lower_bound(g: Grid, E: WeightSet, proper: bool) -> int:
    """Degree lower bound from the polynomial method.

    ``k`` hyperplanes multiply to a degree-``k`` polynomial, so a cover that
    misses a point (``proper=False``) needs the Z-closure of ``E`` to miss it,
    and a proper cover needs every off-``E`` layer to leave the Z*-closure.
    """
    if algebra.max_points() < g.size:
        return 1
    if proper:
        return algebra.ppc_oracle(g, E)
    S = algebra.weight_points(g, E)
    return next(d for d in range(g.N + 1) if len(algebra.z_closure(g, d, S)) < g.size)


def hc_family(g: Grid, E: WeightSet, *, cap: int | None = None,
              algebraic_bound: bool = True) -> list[FlatSection]:
    """A minimum nontrivial hyperplane cover, as sections.

    With ``algebraic_bound`` the search starts at the polynomial-method lower
    bound instead of refuting every smaller size by exhaustion.
    """
    _proper(g, E)
    t = _get(g, cap)
    start = _lower_bound(g, E, False) if algebraic_bound else 1
    target = t.weight_mask(E)
    blocks = _axis_blocks(g)
    best: list[int] | None = None
    limit = len(E)  # one level hyperplane per weight always works
    seen = set()
    for i, p in enumerate(t.points):
        if target >> i & 1:
            continue
        key = _canonical(p, blocks)
        if key in seen:
            continue
        seen.add(key)
        a = t.index[key]
        parts_idx = _maximal_indexed(t.masks, target, lambda m: not m >> a & 1)
        found = _Cover(target, [t.masks[k] & target for k in parts_idx]).minimum(
            limit if best is None else len(best) - 1, start
        )
        if found is not None:
            best = [parts_idx[k] for k in found]
            if len(best) <= start:
                break
    assert best is not None
    return [t.sections[k] for k in best]


def _maximal_indexed(masks: list[int], target: int, admissible) -> list[int]:
    """Indices of admissible sections whose part inside ``target`` is maximal."""
    order = sorted(
        (k for k, m in enumerate(masks) if m & target and admissible(m)),
        key=lambda k: -(masks[k] & target).bit_count(),
    )
    kept: list[int] = []
    parts: set[int] = set()
    for k in order:
        part = masks[k] & target
        if part in parts or any(part & ~masks[j] & target == 0 for j in kept):
            continue
        kept.append(k)
        parts.add(part)
    return kept


def hc_oracle(g: Grid, E: WeightSet, *, cap: int | None = None,
              algebraic_bound: bool = True) -> int:
    """Minimum size of a hyperplane family covering ``E`` but not the whole grid."""
    return len(hc_family(g, E, cap=cap, algebraic_bound=algebraic_bound))


def phc_family(g: Grid, E: WeightSet, *, cap: int | None = None,
               algebraic_bound: bool = True) -> list[FlatSection]:
    """A minimum proper hyperplane cover: covers ``E`` and no whole layer outside ``E``."""
    _proper(g, E)
    t = _get(g, cap)
    target = t.weight_mask(E)
    off_layers = [t.layer_masks[j] for j in range(g.N + 1) if j not in E]

    def allowed(out: int) -> bool:
        return all(out & L != L for L in off_layers)

    candidates: dict[tuple[int, int], int] = {}
    for k, m in enumerate(t.masks):
        inside, out = m & target, m & ~target
        if inside and allowed(out):
            candidates.setdefault((inside, out), k)
    # drop (A_in, A_out) dominated by some (B_in ⊇ A_in, B_out ⊆ A_out)
    keys = sorted(candidates, key=lambda io: (-io[0].bit_count(), io[1].bit_count()))
    kept: list[tuple[int, int]] = []
    for inside, out in keys:
        if any(inside & ~bi == 0 and bo & ~out == 0 for bi, bo in kept):
            continue
        kept.append((inside, out))
    cover = _Cover(target, [i for i, _ in kept], [o for _, o in kept], allowed)
    start = _lower_bound(g, E, True) if algebraic_bound else 1
    found = cover.minimum(len(E), start)
    assert found is not None, "level hyperplanes always give a proper cover"
    return [t.sections[candidates[kept[k]]] for k in found]


def phc_oracle(g: Grid, E: WeightSet, *, cap: int | None = None,
               algebraic_bound: bool = True) -> int:
    return len(phc_family(g, E, cap=cap, algebraic_bound=algebraic_bound))


def ehc_family(g: Grid, E: WeightSet, *, cap: int | None = None,
               algebraic_bound: bool = True) -> list[FlatSection] | None:
    """A minimum exact hyperplane cover (union of traces equals ``E``), or ``None``.

    Exact covers are proper covers, so the proper-cover degree bound applies.
    """
    _proper(g, E)
    t = _get(g, cap)
    target = t.weight_mask(E)
    idx = _maximal_indexed(t.masks, target, lambda m: m & ~target == 0)
    start = _lower_bound(g, E, True) if algebraic_bound else 1
    found = _Cover(target, [t.masks[k] for k in idx]).minimum(target.bit_count(), start)
    if found is None:
        return None
    return [t.sections[idx[k]] for k in found]


def ehc_oracle(g: Grid, E: WeightSet, *, cap: int | None = None,
               algebraic_bound: bool = True) -> int | None:
    fam = ehc_family(g, E, cap=cap, algebraic_bound=algebraic_bound)
    return None if fam is None else len(fam)


def family_trace(g: Grid, forms: Sequence[Poly]) -> frozenset[Point]:
    """Grid points on at least one of the hyperplanes ``forms``."""
    return frozenset(p for p in g.points() if any(f(p) == 0 for f in forms))
