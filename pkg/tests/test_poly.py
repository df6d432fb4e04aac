from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wdclosure.poly import Poly, product

x1, x2, x3 = (Poly.variable(3, i) for i in range(3))

coeffs = st.integers(-5, 5)
terms = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), coeffs, max_size=5
)
points = st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))


def test_arithmetic_and_printing():
    p = (x1 - x2) * (x1 + x2)
    assert str(p) == "x1^2 - x2^2"
    assert p((3, 1, 0)) == 8
    assert (x1 + 1) ** 2 == x1 * x1 + 2 * x1 + 1
    assert str(Poly(3)) == "0" and Poly(3).degree == -1
    assert str(Fraction(1, 2) * x3 - 2) == "1/2*x3 - 2"


def test_zero_terms_are_dropped():
    p = Poly(2, {(1, 0): 1, (0, 1): 0})
    assert p.terms == {(1, 0): 1}
    assert (x1 - x1).is_zero()


def test_integer_normalization():
    p = Poly(2, {(1, 0): Fraction(-1, 2), (0, 1): Fraction(1, 3)})
    q = p.integer_normalized()
    assert str(q) == "3*x1 - 2*x2"
    assert Poly(2).integer_normalized() == Poly(2)


def test_linear_and_json_round_trip():
    h = Poly.linear([1, -2, 0], 5)
    assert str(h) == "x1 - 2*x2 + 5"
    data = h.to_json()
    assert data[0] == {"exps": [1, 0, 0], "coef": "1"}
    assert Poly.from_json(3, data) == h


def test_mismatched_variables():
    with pytest.raises(ValueError):
        x1 + Poly.variable(2, 0)
    with pytest.raises(ValueError):
        Poly(2, {(1,): 1})


def test_zero_set():
    p = x1 * (x2 - 1)
    pts = [(0, 0, 0), (1, 1, 0), (1, 0, 0)]
    assert p.zero_set(pts) == [(0, 0, 0), (1, 1, 0)]
    assert not p.vanishes_on(pts)


@given(terms, terms, points)
def test_evaluation_is_a_ring_map(a, b, pt):
    p, q = Poly(3, a), Poly(3, b)
    assert (p + q)(pt) == p(pt) + q(pt)
    assert (p * q)(pt) == p(pt) * q(pt)
    assert (p - q)(pt) == p(pt) - q(pt)


@given(terms)
def test_degree_of_product(a):
    p = Poly(3, a)
    if not p.is_zero():
        assert (p * p).degree == 2 * p.degree
        assert product([p, p], 3) == p * p
