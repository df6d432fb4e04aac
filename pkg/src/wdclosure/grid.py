"""Finite product grids, point weights and layer combinatorics.

A uniform grid is ``[0, k_1 - 1] x ... x [0, k_n - 1]``.  General product
grids carry explicit per-axis levels; their weight is the sum of rank indices
and they are accepted only by the brute-force oracles.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from .errors import UnsupportedDomainError

Point = tuple[int, ...]


@dataclass(frozen=True)
class Grid:
    dims: tuple[int, ...]
    levels: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        dims = tuple(int(k) for k in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims:
            raise ValueError("a grid needs at least one axis")
        if any(k < 2 for k in dims):
            raise ValueError(f"every axis needs at least 2 levels, got {dims}")
        if self.levels is None:
            return
        levels = tuple(tuple(int(v) for v in axis) for axis in self.levels)
        if len(levels) != len(dims):
            raise ValueError("levels must list one axis per dimension")
        for k, axis in zip(dims, levels):
            if len(axis) != k or any(a >= b for a, b in zip(axis, axis[1:])):
                raise ValueError(f"axis levels {axis} must be {k} strictly increasing values")
        if all(axis == tuple(range(k)) for k, axis in zip(dims, levels)):
            levels = None
        object.__setattr__(self, "levels", levels)

    @classmethod
    def cube(cls, n: int) -> "Grid":
        return cls((2,) * n)

    @classmethod
    def from_levels(cls, levels: Sequence[Sequence[int]]) -> "Grid":
        return cls(tuple(len(axis) for axis in levels), tuple(tuple(a) for a in levels))

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def N(self) -> int:
        return sum(k - 1 for k in self.dims)

    @property
    def uniform(self) -> bool:
        return self.levels is None

    @property
    def is_cube(self) -> bool:
        return self.uniform and all(k == 2 for k in self.dims)

    @property
    def size(self) -> int:
        size = 1
        for k in self.dims:
            size *= k
        return size

    def axis_levels(self, i: int) -> tuple[int, ...]:
        if self.levels is None:
            return tuple(range(self.dims[i]))
        return self.levels[i]

    @cached_property
    def _rank_of(self) -> tuple[dict[int, int], ...]:
        return tuple({v: r for r, v in enumerate(self.axis_levels(i))} for i in range(self.n))

    def points(self) -> list[Point]:
        """All points in mixed-radix lexicographic order."""
        axes = [self.axis_levels(i) for i in range(self.n)]
        return [tuple(p) for p in itertools.product(*axes)]

    def index(self, point: Sequence[int]) -> int:
        """Position of ``point`` in :meth:`points` order."""
        idx = 0
        for i, x in enumerate(point):
            idx = idx * self.dims[i] + self._rank_of[i][x]
        return idx

    def __contains__(self, point) -> bool:
        try:
            return len(point) == self.n and all(x in r for x, r in zip(point, self._rank_of))
        except TypeError:
            return False

    def weight(self, point: Sequence[int]) -> int:
        if len(point) != self.n:
            raise ValueError(f"point {tuple(point)} has wrong dimension for {self}")
        try:
            return sum(r[x] for x, r in zip(point, self._rank_of))
        except KeyError:
            raise ValueError(f"point {tuple(point)} is not on {self}") from None

    @cached_property
    def layer_sizes(self) -> tuple[int, ...]:
        """Layer sizes by exact convolution over the axes."""
        sizes = [1]
        for k in self.dims:
            nxt = [0] * (len(sizes) + k - 1)
            for j, c in enumerate(sizes):
                for s in range(k):
                    nxt[j + s] += c
            sizes = nxt
        return tuple(sizes)

    def spec(self) -> str:
        if self.levels is None:
            return ",".join(str(k) for k in self.dims)
        return "|".join(",".join(str(v) for v in axis) for axis in self.levels)

    def __str__(self) -> str:
        if self.levels is not None:
            return "x".join("{" + ",".join(map(str, a)) + "}" for a in self.levels)
        return "x".join(f"[0,{k - 1}]" for k in self.dims)


def parse_grid(text: str) -> Grid:
    """Parse ``"k1,k2,..."``, ``"cube:n"`` or explicit levels ``"0,1,3|0,1,3"``."""
    text = text.strip()
    try:
        if text.startswith("cube:"):
            return Grid.cube(int(text[5:]))
        if "|" in text:
            return Grid.from_levels([[int(v) for v in axis.split(",")] for axis in text.split("|")])
        if "^" in text:
            k, n = text.split("^")
            return Grid((int(k),) * int(n))
        return Grid(tuple(int(k) for k in text.split(",")))
    except ValueError as exc:
        raise ValueError(f"bad grid spec {text!r}: {exc}") from None


def _check_weight(g: Grid, j: int) -> None:
    if not 0 <= j <= g.N:
        raise ValueError(f"weight {j} outside [0, {g.N}]")


def layer_size(g: Grid, j: int) -> int:
    _check_weight(g, j)
    return g.layer_sizes[j]


def iter_layer(g: Grid, j: int) -> Iterator[Point]:
    """Yield points of weight ``j`` in canonical order without scanning all of ``g``."""
    _check_weight(g, j)
    # suffix capacity prunes branches that cannot reach weight j
    cap = [0] * (g.n + 1)
    for i in range(g.n - 1, -1, -1):
        cap[i] = cap[i + 1] + g.dims[i] - 1
    axes = [g.axis_levels(i) for i in range(g.n)]
    prefix: list[int] = []

    def rec(i: int, remaining: int):
        if i == g.n:
            if remaining == 0:
                yield tuple(prefix)
            return
        for r in range(max(0, remaining - cap[i + 1]), min(g.dims[i] - 1, remaining) + 1):
            prefix.append(axes[i][r])
            yield from rec(i + 1, remaining - r)
            prefix.pop()

    yield from rec(0, j)


def enumerate_layer(g: Grid, j: int) -> list[Point]:
    return list(iter_layer(g, j))


def _require_uniform(g: Grid, what: str) -> None:
    if not g.uniform:
        raise UnsupportedDomainError(f"{what} is defined only for uniform grids, not {g}")


def su2_by_dims(g: Grid) -> bool:
    """Dimension test: ``2 max(k_i - 1) <= N + 1``."""
    _require_uniform(g, "SU2 test")
    return 2 * max(k - 1 for k in g.dims) <= g.N + 1


def su2_by_layers(g: Grid) -> bool:
    """Direct scan for a strictly increasing first half of the layer sizes."""
    _require_uniform(g, "SU2 test")
    sizes = g.layer_sizes
    return all(sizes[j] < sizes[j + 1] for j in range(g.N // 2))


def is_su2(g: Grid) -> bool:
    by_dims = su2_by_dims(g)
    by_layers = su2_by_layers(g)
    if by_dims != by_layers:
        raise AssertionError(f"SU2 tests disagree on {g}: dimension test {by_dims}, layer scan {by_layers}")
    return by_dims


def require_su2(g: Grid, what: str) -> None:
    _require_uniform(g, what)
    if not is_su2(g):
        raise UnsupportedDomainError(f"{what} requires a strictly unimodal uniform grid; {g} is not")
