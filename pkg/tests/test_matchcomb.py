from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import graph_with_rainbow
from cubictsp.bounds import held_karp_opt
from cubictsp.errors import BridgeError, DegreeError, PreconditionError
from cubictsp.families import chorded_gap, cube, fk, k33, k4, petersen, prism, random_cubic
from cubictsp.graph import Multigraph, eulerian_defect
from cubictsp.matching import enumerate_perfect_matchings, is_three_cut_matching
from cubictsp.matchcomb import (
    EulerianCover,
    Fragment,
    _apply_two_cut,
    _pair,
    assemble_spanning,
    chordless_cycles,
    convex_combination_third,
    cover_pipeline,
    cycle_cover_from_matching,
    detect_p_rainbow,
    k4_core_solution,
    matchcomb_bound,
    merge_eulerian,
    operation_i,
    operation_ii,
    reinsert_rainbows,
    remove_rainbows,
    solve_matchcomb,
)


def fragment_ok(g, f):
    mult = [0] * g.m
    for e, k in f.edges.items():
        mult[e] = k
    deg = Counter()
    for e, k in f.edges.items():
        u, v = g.edges[e]
        deg[u] += k
        deg[v] += k
    return set(deg) <= f.vertices and all(d % 2 == 0 for d in deg.values())


# rainbows


def test_petersen_has_no_rainbow():
    assert detect_p_rainbow(petersen()) is None
    red = remove_rainbows(petersen())
    assert red.stack == ()
    assert sorted(red.core.edges) == sorted(tuple(sorted(e)) for e in petersen().edges)


def test_embedded_rainbow_depth_two():
    g, where = graph_with_rainbow(petersen(), 0, 2)
    pat = detect_p_rainbow(g)
    assert pat is not None and pat.p == 2
    assert {pat.a, pat.b} == set(where["ab"])
    assert {pat.u_path, pat.v_path} == {tuple(where["u"]), tuple(where["v"])}
    assert pat.outer[1] not in g.neighbors(pat.outer[0])


@pytest.mark.parametrize("p", [1, 2, 3])
def test_single_rainbow_removal(p):
    host = petersen()
    g, _ = graph_with_rainbow(host, 4, p)
    red = remove_rainbows(g)
    assert len(red.stack) == 1
    assert red.core.n == g.n - (2 * p + 4) == host.n
    assert red.core.is_cubic() and red.core.is_simple()
    assert detect_p_rainbow(red.core) is None


def test_nested_rainbows_reach_fixpoint():
    g, _ = graph_with_rainbow(petersen(), 0, 1)
    g, _ = graph_with_rainbow(g, 3, 2)
    red = remove_rainbows(g)
    assert len(red.stack) >= 2
    assert detect_p_rainbow(red.core) is None


def test_chorded_gap_gadgets_have_no_rungs():
    # each gadget is a chorded 4-cycle whose outer neighbours are not adjacent
    g = chorded_gap(2)
    chords = [(u, v) for u, v in g.edges if len(set(g.neighbors(u)) & set(g.neighbors(v))) == 2]
    assert len(chords) == 3  # one gadget per degree-2 vertex of three_path(2)
    assert detect_p_rainbow(g) is None


def test_k4_core_is_flagged():
    red = remove_rainbows(fk(1))
    assert red.is_k4 and red.stack
    h = k4_core_solution(red)
    assert h.edge_count <= matchcomb_bound(fk(1).n)
    with pytest.raises(PreconditionError):
        k4_core_solution(remove_rainbows(petersen()))


def _rainbow_instance():
    g, _ = graph_with_rainbow(petersen(), 0, 1)
    pat = detect_p_rainbow(g)
    return g, pat


@pytest.mark.parametrize("used", [0, 1, 2])
def test_two_cut_cases(used):
    _, pat = _rainbow_instance()
    (ui, uo), (vi, vo) = pat.boundary
    mult = Counter({_pair(uo, vo): used})
    _apply_two_cut(mult, pat)
    ham = Counter(pat.hamilton_cycle_pairs())
    extra = mult - ham
    if used == 0:
        assert extra == Counter({_pair(ui, uo): 2})
    elif used == 1:
        assert extra == Counter({_pair(ui, uo): 1, _pair(vi, vo): 1, _pair(ui, vi): 1})
    else:
        assert extra == Counter({_pair(ui, uo): 2, _pair(vi, vo): 2})
    assert _pair(uo, vo) not in mult


def test_two_cut_rejects_triple_use():
    _, pat = _rainbow_instance()
    mult = Counter({_pair(*pat.outer): 3})
    with pytest.raises(Exception):
        _apply_two_cut(mult, pat)


def test_reinsert_empty_stack_is_identity():
    g = petersen()
    red = remove_rainbows(g)
    h = solve_matchcomb(g).h
    assert reinsert_rainbows(h, red) == h


@pytest.mark.parametrize("p", [1, 2])
def test_reinsert_respects_growth(p):
    g, _ = graph_with_rainbow(prism(), 2, p)
    red = remove_rainbows(g)
    core_h = solve_matchcomb(red.core).h
    lifted = reinsert_rainbows(core_h, red)
    assert not eulerian_defect(g, lifted.multiplicity)
    assert 3 * (lifted.edge_count - core_h.edge_count) <= 4 * (2 * p + 4)


# convex combinations


def test_combination_petersen_uniform():
    c = convex_combination_third(petersen())
    assert len(c.terms) == 6
    assert all(lam == pytest.approx(1 / 6, abs=1e-9) for lam, _ in c.terms)
    assert c.residual(15) <= 1e-9


def test_combination_k4_uniform():
    c = convex_combination_third(k4())
    assert len(c.terms) == 3 and all(lam == pytest.approx(1 / 3) for lam, _ in c.terms)


@pytest.mark.parametrize("make", [prism, k33, cube])
def test_combination_small_graphs(make):
    g = make()
    c = convex_combination_third(g)
    assert c.residual(g.m) <= 1e-9
    assert all(lam > 0 and is_three_cut_matching(g, m) for lam, m in c.terms)


# covers


def test_petersen_covers_are_two_pentagons():
    g = petersen()
    for m in enumerate_perfect_matchings(g):
        assert sorted(len(c) for c in cycle_cover_from_matching(g, m)) == [5, 5]


def test_k33_covers_by_brute_force():
    g = k33()
    for m in enumerate_perfect_matchings(g):
        cov = cycle_cover_from_matching(g, m)
        assert [len(c) for c in cov] == [6]


def test_prism_rung_cover_is_two_triangles():
    g = prism()
    from cubictsp.matching import PerfectMatching

    cov = cycle_cover_from_matching(g, PerfectMatching(frozenset({6, 7, 8})))
    assert sorted(len(c) for c in cov) == [3, 3]


def test_three_cut_covers_avoid_short_cycles():
    for seed in range(12):
        g = random_cubic(14, seed=seed, simple=True)
        for m in enumerate_perfect_matchings(g):
            if not is_three_cut_matching(g, m):
                continue
            for c in cycle_cover_from_matching(g, m):
                assert len(c) != 3
                if len(c) == 5:
                    vs = set(c.vertices)
                    inside = sum(1 for u, v in g.edges if u in vs and v in vs)
                    assert inside == 5


def test_chordless_cycles():
    assert chordless_cycles(petersen(), 4) == []
    assert len(chordless_cycles(petersen(), 5)) == 12
    assert len(chordless_cycles(cube(), 4)) == 6
    assert chordless_cycles(k4(), 4) == []


def test_operation_i_petersen_unchanged():
    g = petersen()
    m = enumerate_perfect_matchings(g)[0]
    cov = cycle_cover_from_matching(g, m)
    assert sorted(c.edges for c in operation_i(g, cov)) == sorted(c.edges for c in cov)


def test_operation_i_cube_merges_two_squares():
    g = cube()
    for m in enumerate_perfect_matchings(g):
        cov = cycle_cover_from_matching(g, m)
        if sorted(len(c) for c in cov) == [4, 4]:
            out = operation_i(g, cov)
            assert [len(c) for c in out] == [8]
            assert [c.edges for c in operation_i(g, out)] == [c.edges for c in out]
            return
    pytest.fail("cube has a matching whose complement is two 4-cycles")


def test_operation_i_merged_cycles_are_long():
    for seed in range(15):
        g = random_cubic(16, seed=seed, simple=True)
        for m in enumerate_perfect_matchings(g)[:8]:
            if not is_three_cut_matching(g, m):
                continue
            before = cycle_cover_from_matching(g, m)
            after = operation_i(g, before)
            assert sorted(v for c in after for v in c.vertices) == list(range(g.n))
            old = {frozenset(c.edges) for c in before}
            for c in after:
                if frozenset(c.edges) not in old:
                    assert len(c) >= 8


def test_merge_two_copies_of_square():
    g = cube()
    q = chordless_cycles(g, 4)[0]
    es = Counter(g.edge_between(q[i], q[(i + 1) % 4]) for i in range(4))
    f = Fragment(frozenset(q), es)
    out = merge_eulerian(g, f, Fragment(frozenset(q), es.copy()))
    assert out.edge_count == 6 and fragment_ok(g, out)


def test_merge_with_pentagon():
    g = petersen()
    m = enumerate_perfect_matchings(g)[0]
    c1, c2 = cycle_cover_from_matching(g, m)
    for pent in chordless_cycles(g, 5):
        if len(set(pent) & set(c1.vertices)) == 2:
            five = Fragment(frozenset(pent), Counter(g.edge_between(pent[i], pent[(i + 1) % 5]) for i in range(5)))
            out = merge_eulerian(g, Fragment.from_cycle(c1), five)
            assert out.edge_count == len(c1) + 5 - 2 and fragment_ok(g, out)
            return
    pytest.fail("no pentagon meets the first cycle in two vertices")


def test_merge_disjoint_rejected():
    g = petersen()
    c1, c2 = cycle_cover_from_matching(g, enumerate_perfect_matchings(g)[0])
    with pytest.raises(PreconditionError):
        merge_eulerian(g, Fragment.from_cycle(c1), Fragment.from_cycle(c2))


def test_operation_ii_petersen():
    g = petersen()
    for m in enumerate_perfect_matchings(g):
        ec = operation_ii(g, cycle_cover_from_matching(g, m))
        assert len(ec.components) == 1
        assert ec.edge_count == 11 and fragment_ok(g, ec.components[0])
        again = operation_ii(g, [])  # empty cover stays empty
        assert again.components == []


def test_operation_ii_fixpoint_without_pentagons():
    g = cube()
    m = enumerate_perfect_matchings(g)[0]
    cov = cycle_cover_from_matching(g, m)
    assert operation_ii(g, cov).edge_count == sum(len(c) for c in cov)


def test_assemble():
    g = petersen()
    c1, c2 = cycle_cover_from_matching(g, enumerate_perfect_matchings(g)[0])
    h = assemble_spanning(g, EulerianCover([Fragment.from_cycle(c1), Fragment.from_cycle(c2)]))
    assert h.edge_count == 12
    ec = operation_ii(g, [c1, c2])
    h1 = assemble_spanning(g, ec)
    assert h1.edge_count == 11


def test_assemble_rejects_overlap():
    g = petersen()
    c1, _ = cycle_cover_from_matching(g, enumerate_perfect_matchings(g)[0])
    with pytest.raises(PreconditionError):
        assemble_spanning(g, EulerianCover([Fragment.from_cycle(c1)]))


# full solver


def test_solve_petersen():
    r = solve_matchcomb(petersen())
    assert r.h_edges == 11 and r.tour.length == 11
    assert r.extras["average"] == pytest.approx(11)


def test_solve_k33():
    g = k33()
    r = solve_matchcomb(g)
    assert r.tour.length <= 6 == held_karp_opt(g)


def test_solve_rejects():
    with pytest.raises(PreconditionError):
        solve_matchcomb(k4())
    with pytest.raises((DegreeError, PreconditionError)):
        solve_matchcomb(Multigraph(6, [(i, (i + 1) % 6) for i in range(6)]))
    with pytest.raises(PreconditionError):
        solve_matchcomb(Multigraph(2, [(0, 1)] * 3))
    # two K4s with one subdivided edge each, joined at the subdivision vertices
    half = [(0, 4), (4, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    bridged = Multigraph(10, half + [(a + 5, b + 5) for a, b in half] + [(4, 9)])
    assert bridged.is_cubic() and bridged.is_simple()
    with pytest.raises(BridgeError):
        solve_matchcomb(bridged)


def test_fk1_k4_core_path():
    r = solve_matchcomb(fk(1))
    assert r.extras["k4_core"] and r.h_edges <= matchcomb_bound(10)


@settings(max_examples=25)
@given(st.integers(0, 100_000), st.sampled_from([6, 8, 10, 12, 14, 16]))
def test_random_min_and_average_within_bound(seed, n):
    g = random_cubic(n, seed=seed, simple=True)
    r = solve_matchcomb(g)
    bound = matchcomb_bound(n)
    assert r.h_edges <= bound and r.tour.length <= r.h_edges
    assert Fraction(r.extras["average"]).limit_denominator(10**6) <= bound + Fraction(1, 10**6)
    if not r.extras["k4_core"]:
        core = r.extras["core"]
        for _, m in r.extras["combination"].terms:
            h, ec = cover_pipeline(core, m)
            assert not eulerian_defect(core, h.multiplicity)
            assert sorted(v for f in ec.components for v in f.vertices) == list(range(core.n))
