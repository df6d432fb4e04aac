import random
from fractions import Fraction

import sympy
from hypothesis import given, strategies as st

from wdclosure.linalg import ExactMatrix, RowSpace, primitive

entries = st.integers(-6, 6)


@st.composite
def matrices(draw, max_rows=7, max_cols=7):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(1, max_cols))
    # low-rank products make dependent rows common
    if draw(st.booleans()) and r:
        k = draw(st.integers(1, c))
        A = [[draw(entries) for _ in range(k)] for _ in range(r)]
        B = [[draw(entries) for _ in range(c)] for _ in range(k)]
        rows = [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]
    else:
        rows = [[draw(entries) for _ in range(c)] for _ in range(r)]
    return ExactMatrix(rows, c)


@given(matrices())
def test_rank_matches_sympy(m):
    expected = sympy.Matrix(m.rows).rank() if m.rows else 0
    assert m.rank() == expected


@given(matrices())
def test_nullspace_is_a_basis(m):
    basis = m.nullspace()
    assert len(basis) == m.ncols - m.rank()
    for v in basis:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m.rows)
        assert primitive(v) == v
    if basis:
        assert ExactMatrix(basis, m.ncols).rank() == len(basis)


@given(matrices())
def test_rref_matches_sympy(m):
    if not m.rows:
        return
    rows, pivots = m.rref()
    ref, piv = sympy.Matrix(m.rows).rref()
    assert tuple(pivots) == piv
    for i, row in enumerate(rows):
        assert row == [Fraction(int(x.p), int(x.q)) for x in ref.row(i)]


@given(matrices(), st.lists(entries, min_size=7, max_size=7))
def test_row_space_membership_matches_rank(m, v):
    v = v[: m.ncols]
    space = RowSpace(m.ncols)
    for row in m.rows:
        space.add(row)
    assert space.rank == m.rank()
    in_span = m.rank() == m.with_row(v).rank() if m.rows else not any(v)
    assert (v in space) == in_span


def test_rank_invariant_under_permutations():
    rng = random.Random(5)
    for _ in range(30):
        rows = [[rng.randint(-3, 3) for _ in range(6)] for _ in range(5)]
        rows.append([a + b for a, b in zip(rows[0], rows[1])])
        base = ExactMatrix(rows).rank()
        rng.shuffle(rows)
        perm = list(range(6))
        rng.shuffle(perm)
        assert ExactMatrix([[r[j] for j in perm] for r in rows]).rank() == base
        assert ExactMatrix(rows).transpose().rank() == base


def test_large_entries_stay_exact():
    # Hilbert-like matrix of huge integers: rank must still be exact
    n = 8
    big = 10**40
    rows = [[big // (i + j + 1) for j in range(n)] for i in range(n)]
    assert ExactMatrix(rows).rank() == int(sympy.Matrix(rows).rank())


def test_primitive():
    assert primitive([0, -4, 6]) == [0, 2, -3]
    assert primitive([0, 0]) == [0, 0]
