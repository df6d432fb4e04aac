"""Exact integer linear algebra: fraction-free elimination, null spaces, row spaces.

Everything runs on Python ints; no floating point is involved anywhere.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence


def _content(row: Sequence[int]) -> int:
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                break
    return g


def primitive(row: Sequence[int]) -> list[int]:
    """Divide out the content and make the leading nonzero entry positive."""
    g = _content(row)
    if g == 0:
        return list(row)
    lead = next(x for x in row if x)
    if lead < 0:
        g = -g
    return [x // g for x in row]


class ExactMatrix:
    """Dense matrix of arbitrary-precision integers."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int | None = None):
        self.rows = [list(map(int, r)) for r in rows]
        if ncols is None:
            if not self.rows:
                raise ValueError("ncols is required for an empty matrix")
            ncols = len(self.rows[0])
        if any(len(r) != ncols for r in self.rows):
            raise ValueError("ragged matrix")
        self.ncols = ncols

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def with_row(self, row: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix(self.rows + [list(row)], self.ncols)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix([list(c) for c in zip(*self.rows)], len(self.rows)) if self.rows else ExactMatrix([], 0)

    def rank(self) -> int:
        """Rank by Bareiss fraction-free elimination.

        Every intermediate entry is a minor of the input, so the division by
        the previous pivot is exact.
        """
        m = [r[:] for r in self.rows]
        nrows = len(m)
        rank = 0
        prev = 1
        for c in range(self.ncols):
            if rank == nrows:
                break
            piv = next((r for r in range(rank, nrows) if m[r][c]), None)
            if piv is None:
                continue
            m[rank], m[piv] = m[piv], m[rank]
            p = m[rank][c]
            prow = m[rank]
            for r in range(rank + 1, nrows):
                row = m[r]
                f = row[c]
                for k in range(c + 1, self.ncols):
                    row[k] = (p * row[k] - f * prow[k]) // prev
                row[c] = 0
            # entries left of c are already zero in rows below the pivot
            prev = p
            rank += 1
        return rank

    def rref(self) -> tuple[list[list[Fraction]], list[int]]:
        """Reduced row echelon form over the rationals and its pivot columns."""
        m = [[Fraction(x) for x in r] for r in self.rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            piv = next((i for i in range(r, len(m)) if m[i][c]), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = 1 / m[r][c]
            m[r] = [x * inv for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
        return m[:r], pivots

    def nullspace(self) -> list[list[int]]:
        """Basis of ``{x : M x = 0}`` as primitive integer vectors.

        Uses a fraction-free echelon form; one basis vector per free column.
        """
        space = RowSpace(self.ncols)
        for row in self.rows:
            space.add(row)
        echelon = space.reduced_rows()
        pivots = [space.pivot_of(r) for r in echelon]
        pivot_set = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivot_set:
                continue
            # each echelon row is p * x_pivot + sum(row[c] x_c) = 0 over free c
            denom = 1
            for row, pc in zip(echelon, pivots):
                if row[free]:
                    denom = denom * row[pc] // gcd(denom, row[pc])
            vec = [0] * self.ncols
            vec[free] = denom
            for row, pc in zip(echelon, pivots):
                if row[free]:
                    vec[pc] = -row[free] * (denom // row[pc])
            basis.append(primitive(vec))
        return basis


class RowSpace:
    """Incrementally grown row space with fraction-free reduction.

    Rows are kept in reduced echelon form up to positive integer scaling of
    each row, so a membership test is one pass over the pivots.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: dict[int, list[int]] = {}  # pivot column -> row

    @property
    def rank(self) -> int:
        return len(self._rows)

    def pivot_of(self, row: Sequence[int]) -> int:
        return next(i for i, x in enumerate(row) if x)

    def reduce(self, vec: Sequence[int]) -> list[int]:
        v = list(vec)
        for c in sorted(self._rows):
            f = v[c]
            if f:
                row = self._rows[c]
                p = row[c]
                g = gcd(p, f)
                a, b = p // g, f // g
                v = [a * x - b * y for x, y in zip(v, row)]
                v = primitive(v) if any(v) else v
        return v

    def __contains__(self, vec: Sequence[int]) -> bool:
        return not any(self.reduce(vec))

    def add(self, vec: Sequence[int]) -> bool:
        """Add ``vec``; return whether the rank grew."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        v = self.reduce(vec)
        if not any(v):
            return False
        v = primitive(v)
        c = self.pivot_of(v)
        p = v[c]
        # clear the new pivot column from the existing rows
        for pc, row in list(self._rows.items()):
            f = row[c]
            if f:
                g = gcd(p, f)
                a, b = p // g, f // g
                self._rows[pc] = primitive([a * x - b * y for x, y in zip(row, v)])
        self._rows[c] = v
        return True

    def reduced_rows(self) -> list[list[int]]:
        return [self._rows[c][:] for c in sorted(self._rows)]
