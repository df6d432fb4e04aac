import pytest

from wdclosure.algebra import weight_points
from wdclosure.constructions import (
    HyperplaneFamily,
    ehc_t1_form,
    ehc_t2_family,
    family_from_forms,
    level_product,
    pairing_point,
    pairing_poly,
    ppc_witness,
)
from wdclosure.covers import ppc
from wdclosure.errors import ConstructionError, UnsupportedDomainError
from wdclosure.grid import Grid, parse_grid
from wdclosure.poly import Poly
from wdclosure.weightsets import WeightSet, t_set


def proper_sets(N):
    for bits in range((1 << (N + 1)) - 1):
        yield WeightSet.from_bits(N, bits)


def test_level_product():
    g = Grid((3, 3))
    assert level_product(g, WeightSet.empty(4)) == Poly.constant(2)
    assert str(level_product(g, WeightSet.of(4, [2]))) == "x1 + x2 - 2"
    P = level_product(Grid.cube(4), WeightSet.interval(4, 1, 4))
    assert P.degree == 4
    assert P((0, 0, 0, 0)) != 0
    with pytest.raises(UnsupportedDomainError):
        level_product(parse_grid("0,1,3|0,1,3"), WeightSet.of(4, [1]))


def test_pairing_polynomial():
    P = pairing_poly(4, 2)
    x = [Poly.variable(4, i) for i in range(4)]
    assert P == (x[0] - x[1]) * (x[2] - x[3])
    assert P((1, 0, 1, 0)) == 1
    assert pairing_poly(5, 0) == Poly.constant(5)
    Q = pairing_poly(6, 3)
    T = weight_points(Grid.cube(6), t_set(6, 3))
    assert len(T) == 44 and Q.vanishes_on(T)
    with pytest.raises(ValueError):
        pairing_poly(3, 2)


def test_plain_prefix_point_is_not_a_witness():
    # 1^j 0^(n-j) starts with the pair (1, 1) once j >= 2
    assert pairing_poly(6, 2)((1, 1, 1, 0, 0, 0)) == 0
    for j in range(2, 5):
        p = pairing_point(6, 2, j)
        assert sum(p) == j and pairing_poly(6, 2)(p) == 1


def test_proper_cover_witness_examples():
    P = ppc_witness(Grid((3, 3)), t_set(4, 2))
    assert str(P) == "x1^2 - x1*x2 + x2^2 - x1 - x2"
    for n in range(4, 7):
        for i in range(n // 2 + 1):
            if t_set(n, i).is_full():
                continue
            assert ppc_witness(Grid.cube(n), t_set(n, i)).degree == i
    assert ppc_witness(Grid.cube(3), WeightSet.empty(3)) == Poly.constant(3)


def test_proper_cover_witness_exhaustive():
    for g in [Grid.cube(4), Grid((3, 3)), Grid((2, 2, 3)), Grid((4, 3))]:
        for E in proper_sets(g.N):
            P = ppc_witness(g, E)
            assert P.degree == ppc(g, E)
            assert P.vanishes_on(weight_points(g, E))
            for j in range(g.N + 1):
                if j not in E:
                    assert not P.vanishes_on(weight_points(g, WeightSet.of(g.N, [j])))


def test_two_form_family():
    fam = ehc_t2_family(4)
    assert len(fam) == 2
    assert [str(h) for h in fam.forms] == ["-2*x2 + x3 + x4", "-x1 + x2 + x3 + x4 - 1"]
    trace = fam.trace(Grid.cube(4))
    assert {(0, 0, 0, 0), (1, 1, 1, 1), (1, 0, 0, 0), (0, 1, 1, 1)} <= trace
    for n in range(4, 9):
        g = Grid.cube(n)
        assert ehc_t2_family(n).trace(g) == weight_points(g, t_set(n, 2))
    with pytest.raises(ValueError):
        ehc_t2_family(3)


def test_corner_form():
    assert str(ehc_t1_form(Grid.cube(2))) == "x1 - x2"
    for g in [Grid.cube(3), Grid((3, 2)), Grid((4, 3, 2)), Grid((4, 3))]:
        h = ehc_t1_form(g)
        corner = tuple(k - 1 for k in g.dims)
        assert frozenset(p for p in g.points() if h(p) == 0) == {(0,) * g.n, corner}


def test_corner_form_impossible():
    with pytest.raises(ConstructionError, match=r"\(1, 1\)"):
        ehc_t1_form(Grid((3, 3)))
    with pytest.raises(ConstructionError):
        ehc_t1_form(Grid((5,)))


def test_family_helpers():
    fam = family_from_forms([Poly.linear([1, -1])])
    assert isinstance(fam, HyperplaneFamily)
    assert fam.to_json() == [[{"exps": [1, 0], "coef": "1"}, {"exps": [0, 1], "coef": "-1"}]]
    with pytest.raises(ValueError):
        family_from_forms([Poly.constant(2)])
