import networkx as nx
import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubictsp.errors import BudgetExceededError, NoPerfectMatchingError, PreconditionError
from cubictsp.families import k4, petersen, prism, random_cubic, triple_edge
from cubictsp.graph import Multigraph
from cubictsp.matching import (
    PerfectMatching,
    enumerate_perfect_matchings,
    is_perfect_matching,
    is_three_cut_matching,
    max_weight_matching,
    min_weight_perfect_matching,
    minimal_three_cuts,
)
from cubictsp.ms import dfs_structure, ms_weights


def brute_min(g, w):
    return min(m.weight(w) for m in enumerate_perfect_matchings(g))


def test_triple_edge_any_edge():
    g = triple_edge()
    m = min_weight_perfect_matching(g, [-1, -1, -1])
    assert len(m) == 1 and m.weight([-1, -1, -1]) == -1


def test_c4_takes_light_edges():
    g = Multigraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    w = [1, 5, 1, 5]
    m = min_weight_perfect_matching(g, w)
    assert m.edge_ids == {0, 2} and m.weight(w) == 2


def test_petersen_ms_weights_optimum_is_minus_three():
    g = petersen()
    w = ms_weights(g, dfs_structure(g, 0).removable)
    m = min_weight_perfect_matching(g, w)
    assert m.weight(w) == -3 == brute_min(g, w)


def test_enumeration_counts():
    assert len(enumerate_perfect_matchings(triple_edge())) == 3
    assert len(enumerate_perfect_matchings(k4())) == 3
    ms = enumerate_perfect_matchings(petersen())
    assert len(ms) == 6 and len(set(ms)) == 6
    for e in range(15):
        assert sum(e in m for m in ms) == 2


def test_enumeration_budget():
    with pytest.raises(BudgetExceededError):
        enumerate_perfect_matchings(random_cubic(22, seed=0))


def test_three_cuts_k4_are_vertex_stars():
    g = k4()
    stars = {frozenset(e for e, _ in g.incidence[v]) for v in range(4)}
    assert set(minimal_three_cuts(g)) == stars
    assert all(is_three_cut_matching(g, m) for m in enumerate_perfect_matchings(g))


def test_petersen_every_matching_is_three_cut():
    g = petersen()
    assert all(is_three_cut_matching(g, m) for m in enumerate_perfect_matchings(g))


def test_prism_rung_matching_meets_rung_cut_three_times():
    g = prism()
    rungs = PerfectMatching(frozenset({6, 7, 8}))
    assert frozenset({6, 7, 8}) in minimal_three_cuts(g)
    assert not is_three_cut_matching(g, rungs)
    others = [m for m in enumerate_perfect_matchings(g) if m != rungs]
    assert len(others) == 3 and all(is_three_cut_matching(g, m) for m in others)


def test_three_cut_budget():
    with pytest.raises(BudgetExceededError):
        minimal_three_cuts(random_cubic(26, seed=0))


def test_errors():
    with pytest.raises(NoPerfectMatchingError):
        min_weight_perfect_matching(Multigraph(3, [(0, 1), (1, 2), (2, 0)]), [1, 1, 1])
    star = Multigraph(4, [(0, 1), (0, 2), (0, 3)])
    with pytest.raises(NoPerfectMatchingError):
        min_weight_perfect_matching(star, [1, 1, 1])
    with pytest.raises(PreconditionError):
        min_weight_perfect_matching(star, [1, 1])


@given(st.integers(0, 100_000), st.sampled_from([2, 4, 6, 8, 10, 12]), st.integers(1, 20))
def test_exact_against_enumeration(seed, n, spread):
    g = random_cubic(n, seed=seed)
    rng = np.random.default_rng(seed)
    w = [int(x) for x in rng.integers(-spread, spread + 1, g.m)]
    m = min_weight_perfect_matching(g, w)
    assert is_perfect_matching(g, m.edge_ids)
    assert m.weight(w) == brute_min(g, w)


@given(st.integers(0, 100_000), st.integers(-7, 7))
def test_shift_invariance(seed, delta):
    g = random_cubic(10, seed=seed)
    rng = np.random.default_rng(seed)
    w = [int(x) for x in rng.integers(-3, 4, g.m)]
    shifted = [x + delta for x in w]
    opt = brute_min(g, w)
    assert brute_min(g, shifted) == opt + delta * g.n // 2
    optimal_sets = {m for m in enumerate_perfect_matchings(g) if m.weight(w) == opt}
    optimal_shifted = {m for m in enumerate_perfect_matchings(g) if m.weight(shifted) == opt + delta * g.n // 2}
    assert optimal_sets == optimal_shifted
    assert min_weight_perfect_matching(g, shifted).weight(w) == opt


@given(st.integers(0, 100_000), st.sampled_from([4, 8, 16, 40]))
def test_third_of_total_weight_bound(seed, n):
    g = random_cubic(n, seed=seed)
    rng = np.random.default_rng(seed + 1)
    w = [int(x) for x in rng.integers(-10, 11, g.m)]
    m = min_weight_perfect_matching(g, w)
    assert 3 * m.weight(w) <= sum(w)


@pytest.mark.parametrize("seed", range(8))
def test_large_instances_match_networkx(seed):
    g = random_cubic(120, seed=seed, simple=True)
    rng = np.random.default_rng(seed)
    w = [int(x) for x in rng.integers(-5, 6, g.m)]
    ours = min_weight_perfect_matching(g, w).weight(w)
    h = nx.Graph()
    for e, (u, v) in enumerate(g.edges):
        h.add_edge(u, v, weight=-w[e])
    ref = nx.max_weight_matching(h, maxcardinality=True)
    assert ours == -sum(h[u][v]["weight"] for u, v in ref)


def test_max_weight_matching_without_cardinality():
    # path a-b-c-d with a heavy middle edge: best matching is the middle edge alone
    mate = max_weight_matching(4, [(0, 1, 1), (1, 2, 5), (2, 3, 1)])
    assert mate == [-1, 2, 1, -1]
    mate = max_weight_matching(4, [(0, 1, 1), (1, 2, 5), (2, 3, 1)], maxcardinality=True)
    assert mate == [1, 0, 3, 2]
