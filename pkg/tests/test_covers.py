import pytest

from wdclosure.covers import (
    cert_deg,
    ehc_bounds,
    epc_cube,
    has_corner_form,
    hc_cube,
    pc,
    phc_cube,
    ppc,
)
from wdclosure.errors import InvalidSetError, UnsupportedDomainError
from wdclosure.grid import Grid, parse_grid
from wdclosure.weightsets import WeightSet, l_bar, t_set


def proper_sets(N):
    for bits in range((1 << (N + 1)) - 1):
        yield WeightSet.from_bits(N, bits)


def test_pc_examples():
    for g in [Grid.cube(5), Grid((3, 3, 3)), Grid((4, 3))]:
        assert pc(g, WeightSet.interval(g.N, 1, g.N)) == g.N
        assert pc(g, WeightSet.empty(g.N)) == 0
    assert pc(Grid.cube(6), WeightSet.of(6, [1, 3, 5])) == 3
    assert cert_deg(Grid.cube(6), WeightSet.of(6, [1, 3, 5])) == 3


def test_ppc_examples():
    assert ppc(Grid.cube(6), WeightSet.of(6, [0, 3, 6])) == 2
    for g in [Grid.cube(7), Grid((3, 3))]:
        assert ppc(g, WeightSet.interval(g.N, 1, g.N)) == g.N
        for i in range(g.N // 2 + 1):
            if not t_set(g.N, i).is_full():
                assert ppc(g, t_set(g.N, i)) == i


def test_cube_cover_examples():
    assert hc_cube(4, WeightSet.of(4, [0, 4])) == 1
    for n in range(4, 9):
        assert phc_cube(n, t_set(n, 2)) == 2
        assert epc_cube(n, t_set(n, 2)) == 2
        assert epc_cube(n, WeightSet.of(n, [0])) == 1
        assert epc_cube(n, WeightSet.interval(n, 1, n)) == n


def test_cube_identities():
    for n in range(1, 11):
        g = Grid.cube(n)
        for E in proper_sets(n):
            assert hc_cube(n, E) == pc(g, E) == cert_deg(g, E)
            assert phc_cube(n, E) == ppc(g, E) == epc_cube(n, E)


def test_ordering_and_fixpoint_degree():
    for N in range(1, 13):
        g = Grid.cube(N)
        for E in proper_sets(N):
            p, q = pc(g, E), ppc(g, E)
            assert p <= q <= len(E)
            assert q == min(d for d in range(N + 1) if l_bar(N, d, E) == E)
            assert p == min(d for d in range(N + 1) if not l_bar(N, d, E).is_full())


def test_guards():
    with pytest.raises(UnsupportedDomainError):
        pc(Grid((6, 2)), WeightSet.of(6, [1]))
    with pytest.raises(UnsupportedDomainError):
        ppc(parse_grid("0,1,3|0,1,3"), WeightSet.of(4, [1]))
    with pytest.raises(UnsupportedDomainError):
        hc_cube(Grid((3, 3)), WeightSet.of(4, [1]))
    with pytest.raises(InvalidSetError):
        pc(Grid.cube(3), WeightSet.full(3))
    with pytest.raises(ValueError):
        ppc(Grid.cube(3), WeightSet.of(4, [1]))


def test_corner_form_existence():
    assert has_corner_form(Grid.cube(3))
    assert has_corner_form(Grid((3, 2)))
    assert not has_corner_form(Grid((3, 3)))
    assert not has_corner_form(Grid((5, 3)))
    assert not has_corner_form(Grid((2,)))


def test_exact_cover_bounds():
    for g in [Grid.cube(5), Grid((3, 3)), Grid((4, 3))]:
        b = ehc_bounds(g, WeightSet.of(g.N, [2]))
        assert (b.lower, b.upper, b.exact, b.status) == (1, 1, 1, "proved")
    for n in range(4, 9):
        b = ehc_bounds(Grid.cube(n), t_set(n, 2))
        assert b.exact == 2
    # T_(n,2) plus one middle weight: both bounds are 3, so the value is settled
    b = ehc_bounds(Grid.cube(7), t_set(7, 2) | WeightSet.of(7, [3]))
    assert (b.lower, b.upper, b.exact) == (3, 3, 3)
    # with a third tail level the lower bound drops below the construction
    b = ehc_bounds(Grid.cube(6), t_set(6, 3))
    assert (b.lower, b.upper, b.exact, b.status, b.conjectured) == (3, 4, None, "conjectured", 4)


def test_exact_cover_bounds_without_corner_form():
    b = ehc_bounds(Grid((3, 3)), WeightSet.of(4, [0, 4]))
    assert (b.lower, b.upper, b.exact, b.status) == (1, 2, None, "open")


def test_exact_cover_bounds_off_domain():
    b = ehc_bounds(parse_grid("0,1,3|0,1,3"), WeightSet.of(4, [2]))
    assert (b.lower, b.upper, b.status) == (1, 3, "open")
    b = ehc_bounds(Grid((6, 2)), WeightSet.of(6, [1, 2]))
    assert (b.lower, b.upper) == (1, 2)
    assert ehc_bounds(Grid.cube(3), WeightSet.empty(3)).exact == 0
