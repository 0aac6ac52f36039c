from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cubictsp.bounds import held_karp_opt
from cubictsp.bridges import bridge_bound, bridge_lower_bound, decompose, solve_with_bridges
from cubictsp.errors import DegreeError, PreconditionError
from cubictsp.families import petersen, random_bridged
from cubictsp.graph import Multigraph, components, find_bridges
from cubictsp.ms import solve_ms


def path(n):
    return Multigraph(n, [(i, i + 1) for i in range(n - 1)])


def subdivided_k4(offset):
    # K4 on offset..offset+3 with edge (offset, offset+1) split by offset+4
    o = offset
    return [(o, o + 4), (o + 4, o + 1), (o, o + 2), (o, o + 3), (o + 1, o + 2), (o + 1, o + 3), (o + 2, o + 3)]


def bridged_sample(blocks, seed):
    while True:
        try:
            return random_bridged(blocks, seed=seed)
        except PreconditionError:
            seed += 1_000_003


def test_bridgeless_reduces_to_ms_bound():
    g = petersen()
    r = solve_with_bridges(g)
    assert r.bound == solve_ms(g).bound
    assert bridge_lower_bound(g) == g.n


def test_path_four():
    g = path(4)
    d = decompose(g)
    assert (d.h, d.singletons) == (3, 4)
    assert bridge_lower_bound(g) == 6 == held_karp_opt(g)
    r = solve_with_bridges(g)
    assert r.tour.length == 6 and r.bound == 6


def test_barbell_of_triangles():
    g = Multigraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)])
    assert bridge_lower_bound(g) == 8 == held_karp_opt(g)
    r = solve_with_bridges(g)
    assert r.tour.length == 8 <= r.bound


def test_two_subdivided_k4_blocks():
    g = Multigraph(10, subdivided_k4(0) + subdivided_k4(5) + [(4, 9)])
    d = decompose(g)
    assert (d.h, d.singletons) == (1, 0)
    r = solve_with_bridges(g)
    assert r.bound == Fraction(4 * 11, 3) - Fraction(2, 3) == 14
    assert r.h_edges <= r.bound and r.tour.length <= r.h_edges
    assert r.h.multiplicity[g.edge_between(4, 9)] == 2


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_path_tree_doubles_every_edge(n):
    g = path(n)
    r = solve_with_bridges(g)
    assert all(k == 2 for k in r.h.multiplicity)
    assert r.tour.length == 2 * (n - 1) == bridge_lower_bound(g)


def test_single_vertex():
    g = Multigraph(1, [])
    r = solve_with_bridges(g)
    assert r.tour.length == 0 == bridge_lower_bound(g)


def test_degree_error():
    with pytest.raises(DegreeError):
        solve_with_bridges(Multigraph(5, [(0, 1), (0, 2), (0, 3), (0, 4)]))


def test_bound_formula():
    assert bridge_bound(10, 0, 0) == Fraction(38, 3)
    assert bridge_bound(4, 3, 4) == 6


@given(st.integers(0, 100_000), st.integers(2, 8))
def test_decomposition_invariants(seed, blocks):
    g = bridged_sample(blocks, seed)
    d = decompose(g)
    assert len(d.components) == d.h + 1
    assert d.bridges == find_bridges(g)
    for comp in d.components:
        if len(comp) > 1:
            sub, _, _ = g.subgraph(comp, [e for e, (u, v) in enumerate(g.edges)
                                          if u in comp and v in comp and e not in d.bridges])
            assert not find_bridges(sub) and max(components(sub.n, sub.edges)) == 0


@given(st.integers(0, 100_000), st.integers(2, 10))
def test_random_bridged_within_bounds(seed, blocks):
    g = bridged_sample(blocks, seed)
    r = solve_with_bridges(g)
    lb = bridge_lower_bound(g)
    assert r.h_edges <= r.bound
    assert r.tour.length <= r.h_edges
    assert Fraction(r.tour.length, lb) <= Fraction(4, 3)


@pytest.mark.parametrize("seed", range(12))
def test_lower_bound_against_held_karp(seed):
    blocks = 2 + seed % 4
    g = bridged_sample(blocks, seed)
    while g.n > 16:
        seed += 97
        g = bridged_sample(blocks, seed)
    opt = held_karp_opt(g)
    assert opt >= bridge_lower_bound(g)
    assert solve_with_bridges(g).tour.length >= opt
