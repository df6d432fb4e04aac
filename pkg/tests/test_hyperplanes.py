import random
from collections import Counter

import pytest

from wdclosure.algebra import weight_points, z_closure
from wdclosure.errors import InvalidSetError, OracleCapError
from wdclosure.grid import Grid, parse_grid
from wdclosure.hyperplanes import (
    ehc_family,
    ehc_oracle,
    enumerate_sections,
    family_trace,
    h_closure,
    hc_family,
    hc_oracle,
    phc_family,
    phc_oracle,
    realizing_form,
)
from wdclosure.poly import Poly
from wdclosure.weightsets import WeightSet, t_set

TINY = [Grid.cube(n) for n in range(1, 5)] + [parse_grid(s) for s in ["3,3", "2,3", "2,2,3", "4,3"]]


def proper_sets(N):
    for bits in range((1 << (N + 1)) - 1):
        yield WeightSet.from_bits(N, bits)


def test_section_counts():
    sq = enumerate_sections(Grid.cube(2))
    assert Counter(len(s.points) for s in sq) == {1: 4, 2: 6}
    g = Grid((3, 3))
    sizes = Counter(len(s.points) for s in enumerate_sections(g))
    assert sizes == {1: 9, 2: 12, 3: 8}
    assert len(enumerate_sections(Grid.cube(3))) == 56


def test_sections_are_affinely_closed_and_realized():
    for g in [Grid.cube(3), Grid((3, 3)), Grid((2, 3))]:
        seen = set()
        for s in enumerate_sections(g):
            assert s.points not in seen
            seen.add(s.points)
            assert 0 <= s.dim < g.n
            h = realizing_form(g, s)
            assert h.degree == 1
            assert frozenset(p for p in g.points() if h(p) == 0) == s.points
        assert all(frozenset([p]) in seen for p in g.points())


def test_square_hyperplane_closure_is_everything():
    g = Grid((3, 3))
    S = weight_points(g, t_set(4, 2))
    assert h_closure(g, 2, S) == frozenset(g.points())


def test_four_cube_tail_set_is_closed():
    g = Grid.cube(4)
    S = weight_points(g, t_set(4, 2))
    assert h_closure(g, 2, S) == S
    G = frozenset(g.points())
    assert h_closure(g, 2, G) == G


def test_hyperplane_closure_contains_zariski_closure():
    rng = random.Random(4)
    for g in [Grid((3, 3)), Grid.cube(3), Grid((2, 3))]:
        pts = g.points()
        for _ in range(25):
            S = [p for p in pts if rng.random() < 0.5]
            d = rng.randint(0, g.N)
            assert z_closure(g, d, S) <= h_closure(g, d, S)


def test_bounded_search_gives_same_closure():
    for g in [Grid.cube(3), Grid((3, 3)), Grid((2, 3))]:
        for bits in range(1 << (g.N + 1)):
            S = weight_points(g, WeightSet.from_bits(g.N, bits))
            for d in range(g.N + 1):
                assert h_closure(g, d, S) == h_closure(g, d, S, algebraic_bound=True)


def test_hc_is_least_degree_with_nontrivial_closure():
    for g in TINY:
        G = frozenset(g.points())
        for E in proper_sets(g.N):
            S = weight_points(g, E)
            first = next(d for d in range(g.N + 1) if h_closure(g, d, S) != G)
            assert hc_oracle(g, E, algebraic_bound=False) == first, (g, E)


def test_oracle_examples():
    g = Grid.cube(4)
    assert hc_oracle(g, WeightSet.interval(4, 1, 4)) == 4
    assert hc_oracle(g, WeightSet.of(4, [0, 4])) == 1
    assert ehc_oracle(g, t_set(4, 2)) == 2
    assert phc_oracle(g, t_set(4, 2)) == 2
    for g in [Grid.cube(4), Grid((3, 3)), Grid((4, 3))]:
        for j in range(1, g.N):
            assert ehc_oracle(g, WeightSet.of(g.N, [j])) == 1


def test_bound_does_not_change_answers():
    for g in [Grid.cube(2), Grid.cube(3), Grid((3, 3)), Grid((2, 3))]:
        for E in proper_sets(g.N):
            assert hc_oracle(g, E) == hc_oracle(g, E, algebraic_bound=False)
            assert phc_oracle(g, E) == phc_oracle(g, E, algebraic_bound=False)
            assert ehc_oracle(g, E) == ehc_oracle(g, E, algebraic_bound=False)


def test_families_satisfy_their_constraints():
    for g in [Grid.cube(3), Grid((3, 3))]:
        G = frozenset(g.points())
        for E in proper_sets(g.N):
            S = weight_points(g, E)
            fam = hc_family(g, E)
            union = frozenset().union(*(s.points for s in fam))
            assert S <= union != G
            fam = phc_family(g, E)
            union = frozenset().union(*(s.points for s in fam))
            assert S <= union
            for j in range(g.N + 1):
                if j not in E:
                    layer = weight_points(g, WeightSet.of(g.N, [j]))
                    assert not layer <= union
            fam = ehc_family(g, E)
            assert frozenset().union(*(s.points for s in fam)) == S
            forms = [s.form(g) for s in fam]
            assert family_trace(g, forms) == S


def test_square_exact_cover_of_corners_needs_two():
    # the diagonal through (0,0) and (2,2) also meets (1,1)
    assert ehc_oracle(Grid((3, 3)), WeightSet.of(4, [0, 4])) == 2
    assert ehc_oracle(Grid((3, 3)), WeightSet.of(4, [0, 1, 4])) == 3


def test_errors():
    with pytest.raises(InvalidSetError):
        hc_oracle(Grid.cube(2), WeightSet.full(2))
    with pytest.raises(OracleCapError):
        enumerate_sections(Grid.cube(6))
    with pytest.raises(OracleCapError):
        g = Grid.cube(4)
        h_closure(g, 4, weight_points(g, WeightSet.interval(4, 0, 3)), max_depth=3)


def test_family_trace():
    g = Grid.cube(2)
    h = Poly.linear([1, -1])
    assert family_trace(g, [h]) == {(0, 0), (1, 1)}
