"""4n/3 - 2 tours for simple bridgeless cubic graphs via averaged cycle covers.

Outline:

1. Rainbow reduction. A chorded 4-cycle ``u0 a v0 b`` (chord ``ab``) whose
   outer paths ``u0 u1 ...`` and ``v0 v1 ...`` are joined by rungs
   ``u1v1, ..., upvp`` hangs off the rest of the graph by a 2-cut. It is cut
   out and replaced by the edge ``u(p+1) v(p+1)``; repeat until none is left.
2. Write ``(1/3, ..., 1/3)`` as a convex combination of perfect matchings
   (enumeration + LP feasibility). Only matchings meeting every 3-cut once
   can appear with positive weight.
3. For each matching, the complementary cycle cover is improved by merging
   cycles across chordless 4-cycles (swap two edges) and then across
   chordless 5-cycles (Eulerian merge, +1 edge per merge).
4. Components are linked by a doubled spanning tree; rainbows are put back.

The best cover wins; the weighted average is reported as well.
"""

from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cycles import Cycle, two_factor_cycles
from .errors import (
    BridgeError,
    BudgetExceededError,
    DegreeError,
    DisconnectedGraphError,
    EulerianError,
    PreconditionError,
)
from .graph import EulerianSubgraph, Multigraph, components, eulerian_circuit, find_bridges, is_connected, shortcut_tour
from .lp import solve_lp
from .matching import (
    ENUM_BUDGET,
    THREE_CUT_BUDGET,
    PerfectMatching,
    enumerate_perfect_matchings,
    is_three_cut_matching,
    minimal_three_cuts,
)
from .report import SolveReport

COMBO_TOL = 1e-9


def _pair(u: int, v: int) -> frozenset:
    return frozenset((u, v))


def _adjacency(g: Multigraph) -> dict[int, set[int]]:
    return {v: set(g.neighbors(v)) for v in range(g.n)}


# ---------------------------------------------------------------------------
# rainbows


@dataclass(frozen=True)
class RainbowPattern:
    """Chorded 4-cycle ``u0 a v0 b`` with rungs ``u_i v_i`` for ``1 <= i <= p``.

    ``u_path`` and ``v_path`` run from index 0 to ``p + 1``; the last entries
    are the outside endpoints of the 2-cut.
    """

    p: int
    u_path: tuple[int, ...]
    v_path: tuple[int, ...]
    a: int
    b: int

    @property
    def boundary(self) -> tuple[tuple[int, int], tuple[int, int]]:
        p = self.p
        return (self.u_path[p], self.u_path[p + 1]), (self.v_path[p], self.v_path[p + 1])

    @property
    def outer(self) -> tuple[int, int]:
        return self.u_path[self.p + 1], self.v_path[self.p + 1]

    @property
    def inner(self) -> tuple[int, int]:
        return self.u_path[self.p], self.v_path[self.p]

    @property
    def vertices(self) -> frozenset[int]:
        p = self.p
        return frozenset(self.u_path[: p + 1] + self.v_path[: p + 1] + (self.a, self.b))

    def hamilton_path(self) -> list[int]:
        """``u_p, ..., u_0, a, b, v_0, ..., v_p``."""
        p = self.p
        return list(reversed(self.u_path[: p + 1])) + [self.a, self.b] + list(self.v_path[: p + 1])

    def hamilton_cycle_pairs(self) -> list[frozenset]:
        path = self.hamilton_path()
        pairs = [_pair(x, y) for x, y in zip(path, path[1:])]
        pairs.append(_pair(path[0], path[-1]))
        return pairs


def _detect(adj: Mapping[int, set[int]]) -> RainbowPattern | None:
    for a in sorted(adj):
        for b in sorted(adj[a]):
            if b <= a:
                continue
            common = (adj[a] & adj[b]) - {a, b}
            if len(common) != 2 or len(adj[a]) != 3 or len(adj[b]) != 3:
                continue
            u0, v0 = sorted(common)
            if v0 in adj[u0]:
                continue
            pat = _extend(adj, a, b, u0, v0)
            if pat is not None:
                return pat
    return None


def _extend(adj, a, b, u0, v0) -> RainbowPattern | None:
    def step(prev_excl: set[int], x: int) -> int | None:
        rest = adj[x] - prev_excl
        return next(iter(rest)) if len(rest) == 1 else None

    us, vs = [u0], [v0]
    seen = {a, b, u0, v0}
    nu = step({a, b}, u0)
    nv = step({a, b}, v0)
    while True:
        if nu is None or nv is None or nu == nv or nu in seen or nv in seen:
            return None
        us.append(nu)
        vs.append(nv)
        seen.update((nu, nv))
        if nv not in adj[nu]:
            break
        i = len(us) - 1
        nu = step({us[i - 1], vs[i]}, us[i])
        nv = step({vs[i - 1], us[i]}, vs[i])
    p = len(us) - 2
    if p < 1:
        return None
    return RainbowPattern(p, tuple(us), tuple(vs), a, b)


def detect_p_rainbow(g: Multigraph) -> RainbowPattern | None:
    """First rainbow found scanning chord edges ``ab`` in lexicographic order.

    The rung ladder is followed as far as it goes, so ``p`` is maximal for
    the chorded 4-cycle that anchors it.
    """
    return _detect(_adjacency(g))


@dataclass(frozen=True)
class RainbowReduction:
    """Rainbow-free core plus the removed patterns, in removal order.

    ``core`` is relabelled compactly; ``labels[i]`` is the original vertex
    behind core vertex ``i``.
    """

    original: Multigraph
    core: Multigraph
    labels: tuple[int, ...]
    stack: tuple[RainbowPattern, ...]

    @property
    def is_k4(self) -> bool:
        return self.core.n == 4


def remove_rainbows(g: Multigraph) -> RainbowReduction:
    adj = _adjacency(g)
    stack = []
    while True:
        pat = _detect(adj)
        if pat is None:
            break
        gone = pat.vertices
        for x in gone:
            for y in adj[x]:
                if y not in gone:
                    adj[y].discard(x)
            del adj[x]
        u2, v2 = pat.outer
        adj[u2].add(v2)
        adj[v2].add(u2)
        stack.append(pat)
    labels = tuple(sorted(adj))
    index = {v: i for i, v in enumerate(labels)}
    edges = sorted((index[x], index[y]) for x in labels for y in adj[x] if x < y)
    return RainbowReduction(g, Multigraph(len(labels), edges), labels, tuple(stack))


def _apply_two_cut(mult: Counter, pat: RainbowPattern) -> None:
    """Expand one rainbow in place on pair multiplicities, by how often u″v″ is used."""
    (ui, uo), (vi, vo) = pat.boundary
    key = _pair(uo, vo)
    used = mult.pop(key, 0)
    if used == 0:
        mult[_pair(ui, uo)] += 2
    elif used == 1:
        mult[_pair(ui, uo)] += 1
        mult[_pair(vi, vo)] += 1
        mult[_pair(ui, vi)] += 1
    elif used == 2:
        mult[_pair(ui, uo)] += 2
        mult[_pair(vi, vo)] += 2
    else:
        raise EulerianError(f"solution uses the replacement edge {used} times")
    for pr in pat.hamilton_cycle_pairs():
        mult[pr] += 1


def _pairs_to_subgraph(g: Multigraph, mult: Mapping[frozenset, int]) -> EulerianSubgraph:
    vec = [0] * g.m
    for pr, k in mult.items():
        if not k:
            continue
        x, y = tuple(pr)
        e = g.edge_between(x, y)
        if e is None:
            raise EulerianError(f"pair {sorted(pr)} is not an edge of the graph")
        vec[e] += k
    return EulerianSubgraph(g, tuple(vec))


def reinsert_rainbows(h: EulerianSubgraph, reduction: RainbowReduction,
                      patterns: Sequence[RainbowPattern] | None = None) -> EulerianSubgraph:
    """Lift a solution on the core back to the original graph."""
    core, labels = h.base, reduction.labels
    mult: Counter = Counter()
    for e, k in enumerate(h.multiplicity):
        if k:
            x, y = core.edges[e]
            mult[_pair(labels[x], labels[y])] += k
    for pat in reversed(reduction.stack if patterns is None else patterns):
        _apply_two_cut(mult, pat)
    return _pairs_to_subgraph(reduction.original, mult)


def k4_core_solution(reduction: RainbowReduction) -> EulerianSubgraph:
    """Hamilton cycle through the last rainbow when the core is K4, then lifted."""
    if not reduction.is_k4 or not reduction.stack:
        raise PreconditionError("core is not a K4 left behind by rainbow removal")
    last = reduction.stack[-1]
    uo, vo = last.outer
    x, y = sorted(set(reduction.labels) - {uo, vo})
    ui, vi = last.inner
    mult: Counter = Counter()
    for s, t in ((uo, x), (x, y), (y, vo), (ui, uo), (vi, vo)):
        mult[_pair(s, t)] += 1
    path = last.hamilton_path()
    for s, t in zip(path, path[1:]):
        mult[_pair(s, t)] += 1
    for pat in reversed(reduction.stack[:-1]):
        _apply_two_cut(mult, pat)
    return _pairs_to_subgraph(reduction.original, mult)


# ---------------------------------------------------------------------------
# convex combination of perfect matchings


@dataclass(frozen=True)
class ConvexCombination:
    terms: tuple[tuple[float, PerfectMatching], ...]

    def edge_loads(self, m: int) -> np.ndarray:
        load = np.zeros(m)
        for lam, mt in self.terms:
            for e in mt.edge_ids:
                load[e] += lam
        return load

    def residual(self, m: int) -> float:
        """Largest deviation from ``sum(lambda) = 1`` and ``1/3`` per edge."""
        total = abs(sum(lam for lam, _ in self.terms) - 1.0)
        if m == 0:
            return total
        return max(total, float(np.abs(self.edge_loads(m) - 1.0 / 3.0).max()))


def convex_combination_third(g: Multigraph, enum_budget: int = ENUM_BUDGET,
                             cut_budget: int = THREE_CUT_BUDGET) -> ConvexCombination:
    """Positive weights on 3-cut perfect matchings averaging to 1/3 per edge."""
    cuts = minimal_three_cuts(g, cut_budget)
    candidates = [mt for mt in enumerate_perfect_matchings(g, enum_budget)
                  if is_three_cut_matching(g, mt, cuts)]
    if not candidates:
        raise PreconditionError("graph has no 3-cut perfect matching")
    k = len(candidates)
    A = np.zeros((g.m + 1, k))
    for j, mt in enumerate(candidates):
        for e in mt.edge_ids:
            A[e, j] = 1.0
    A[g.m, :] = 1.0
    b = np.full(g.m + 1, 1.0 / 3.0)
    b[g.m] = 1.0
    res = solve_lp(np.zeros(k), A_eq=A, b_eq=b)
    if res.status != "optimal":
        raise PreconditionError(f"no convex combination of 3-cut matchings exists (LP {res.status})")
    terms = tuple((float(lam), mt) for lam, mt in zip(res.x, candidates) if lam > COMBO_TOL)
    combo = ConvexCombination(terms)
    if combo.residual(g.m) > COMBO_TOL:
        raise PreconditionError(f"convex combination residual {combo.residual(g.m):.3g} exceeds tolerance")
    return combo


# ---------------------------------------------------------------------------
# covers


def cycle_cover_from_matching(g: Multigraph, m: PerfectMatching) -> list[Cycle]:
    return two_factor_cycles(g, (e for e in range(g.m) if e not in m.edge_ids))


def chordless_cycles(g: Multigraph, length: int) -> list[tuple[int, ...]]:
    """Induced cycles of a simple graph with ``length`` vertices.

    Each cycle is listed once, starting at its smallest vertex and heading
    to the smaller of that vertex's two cycle neighbours; output is sorted.
    """
    adj = _adjacency(g)
    out = []

    def grow(path: list[int]) -> None:
        if len(path) == length:
            if path[0] in adj[path[-1]] and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for w in sorted(adj[path[-1]]):
            if w > path[0] and w not in path:
                path.append(w)
                grow(path)
                path.pop()

    for s in range(g.n):
        grow([s])
    res = []
    for cyc in out:
        ok = True
        for i in range(length):
            for j in range(i + 2, length):
                if (i, j) == (0, length - 1):
                    continue
                if cyc[j] in adj[cyc[i]]:
                    ok = False
        if ok:
            res.append(cyc)
    return sorted(res)


def _cycle_edge_ids(g: Multigraph, cyc: Sequence[int]) -> list[int]:
    return [g.edge_between(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]


def operation_i(g: Multigraph, cover: Sequence[Cycle]) -> list[Cycle]:
    """Merge two cover cycles across a chordless 4-cycle, until impossible.

    For a 4-cycle with edges ``e0 e1 e2 e3`` where one opposite pair lies in
    two different cover cycles and the other pair is outside the cover, the
    two pairs trade places; the two cycles become one.
    """
    quads = [(q, _cycle_edge_ids(g, q)) for q in chordless_cycles(g, 4)]
    cov = {e for c in cover for e in c.edges}
    while True:
        cycles = two_factor_cycles(g, cov)
        comp = [0] * g.n
        for i, c in enumerate(cycles):
            for v in c.vertices:
                comp[v] = i
        for q, es in quads:
            done = False
            for shift in (0, 1):
                keep_out = (es[shift], es[shift + 2])
                keep_in = (es[shift + 1], es[(shift + 3) % 4])
                if any(e in cov for e in keep_out) or not all(e in cov for e in keep_in):
                    continue
                ends_a = g.edges[keep_in[0]]
                ends_b = g.edges[keep_in[1]]
                if comp[ends_a[0]] == comp[ends_b[0]]:
                    continue
                cov.difference_update(keep_in)
                cov.update(keep_out)
                done = True
                break
            if done:
                break
        else:
            return two_factor_cycles(g, cov)


@dataclass
class Fragment:
    """Connected even-degree edge multiset on a subset of the vertices."""

    vertices: frozenset[int]
    edges: Counter = field(default_factory=Counter)

    @property
    def edge_count(self) -> int:
        return sum(self.edges.values())

    @classmethod
    def from_cycle(cls, c: Cycle) -> "Fragment":
        return cls(frozenset(c.vertices), Counter(c.edges))


@dataclass
class EulerianCover:
    components: list[Fragment]

    @property
    def edge_count(self) -> int:
        return sum(f.edge_count for f in self.components)


def _fragment_connected(g: Multigraph, vertices: frozenset[int], edges: Counter) -> bool:
    verts = sorted(vertices)
    index = {v: i for i, v in enumerate(verts)}
    pairs = []
    for e, k in edges.items():
        if k:
            u, v = g.edges[e]
            pairs.append((index[u], index[v]))
    return all(lab == 0 for lab in components(len(verts), pairs))


def merge_eulerian(g: Multigraph, h1: Fragment, h2: Fragment) -> Fragment:
    """Sum two fragments sharing two or more vertices, minus two edge copies.

    Two copies of one edge with multiplicity at least 2 in the sum are
    dropped, trying edges at the lowest shared vertex first, then the next
    shared vertex, then any other; the first choice leaving the result
    connected is taken.
    """
    shared = sorted(h1.vertices & h2.vertices)
    if len(shared) < 2:
        raise PreconditionError("fragments share fewer than two vertices")
    total = h1.edges + h2.edges
    verts = h1.vertices | h2.vertices
    order: list[int] = []
    for v in shared[:2]:
        order.extend(e for e, _ in g.incidence[v] if e not in order)
    order.extend(e for e in sorted(total) if e not in order)
    for e in order:
        if total[e] >= 2:
            trial = total.copy()
            trial[e] -= 2
            if trial[e] == 0:
                del trial[e]
            if _fragment_connected(g, verts, trial):
                return Fragment(verts, trial)
    raise EulerianError("no removable pair of parallel edges keeps the merge connected")


def operation_ii(g: Multigraph, cover: Sequence[Cycle]) -> EulerianCover:
    """Join two components through a chordless 5-cycle, until impossible.

    Applies when the 5-cycle meets exactly two components, both with at
    least 5 vertices, sharing 2 and 3 of its vertices respectively. The
    2-sharing component is merged with the 5-cycle first.
    """
    frags = [Fragment.from_cycle(c) for c in cover]
    pents = chordless_cycles(g, 5)
    while True:
        owner = [0] * g.n
        for i, f in enumerate(frags):
            for v in f.vertices:
                owner[v] = i
        applied = False
        for pent in pents:
            hit = Counter(owner[v] for v in pent)
            if len(hit) != 2:
                continue
            (i, ci), (j, cj) = sorted(hit.items(), key=lambda t: (t[1], t[0]))
            if (ci, cj) != (2, 3):
                continue
            if len(frags[i].vertices) < 5 or len(frags[j].vertices) < 5:
                continue
            five = Fragment(frozenset(pent), Counter(_cycle_edge_ids(g, pent)))
            merged = merge_eulerian(g, merge_eulerian(g, frags[i], five), frags[j])
            frags = [f for k, f in enumerate(frags) if k not in (i, j)] + [merged]
            frags.sort(key=lambda f: min(f.vertices))
            applied = True
            break
        if not applied:
            return EulerianCover(frags)


def assemble_spanning(g: Multigraph, cover: EulerianCover) -> EulerianSubgraph:
    """Link the components with a doubled spanning tree of the quotient graph.

    Tree edges are picked greedily in edge-id order. Edges whose total
    multiplicity reaches 3 or more lose copies in pairs, which keeps parity
    and connectivity.
    """
    owner = [-1] * g.n
    for i, f in enumerate(cover.components):
        for v in f.vertices:
            if owner[v] != -1:
                raise PreconditionError(f"vertex {v} lies in two components")
            owner[v] = i
    if any(o < 0 for o in owner):
        raise PreconditionError("cover does not reach every vertex")
    k = len(cover.components)
    parent = list(range(k))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total: Counter = Counter()
    for f in cover.components:
        total.update(f.edges)
    joined = 0
    for e, (u, v) in enumerate(g.edges):
        a, b = find(owner[u]), find(owner[v])
        if a != b:
            parent[a] = b
            total[e] += 2
            joined += 1
    if joined != k - 1:
        raise DisconnectedGraphError("components cannot be linked into one tree")
    mult = [0] * g.m
    for e, c in total.items():
        while c > 2:
            c -= 2
        mult[e] = c
    return EulerianSubgraph(g, tuple(mult))


def cover_pipeline(g: Multigraph, m: PerfectMatching) -> tuple[EulerianSubgraph, EulerianCover]:
    cover = operation_i(g, cycle_cover_from_matching(g, m))
    ecover = operation_ii(g, cover)
    return assemble_spanning(g, ecover), ecover


# ---------------------------------------------------------------------------
# full pipeline


def matchcomb_bound(n: int) -> Fraction:
    return Fraction(4 * n - 6, 3)


def check_simple_cubic_bridgeless(g: Multigraph) -> None:
    if not g.is_simple():
        raise PreconditionError("graph must be simple")
    deg = g.degrees()
    bad = [v for v, d in enumerate(deg) if d != 3]
    if bad:
        raise DegreeError(f"vertex {bad[0]} has degree {deg[bad[0]]}, expected 3")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    bridges = find_bridges(g)
    if bridges:
        raise BridgeError(f"edge {min(bridges)} is a bridge")


def solve_matchcomb(g: Multigraph, enum_budget: int = ENUM_BUDGET,
                    cut_budget: int = THREE_CUT_BUDGET) -> SolveReport:
    """Best of the averaged cover constructions; at most ``4n/3 - 2`` edges."""
    t0 = time.perf_counter()
    check_simple_cubic_bridgeless(g)
    if g.n < 6:
        raise PreconditionError(f"need n >= 6, got {g.n}")
    red = remove_rainbows(g)
    extras: dict = {"rainbows": [pat.p for pat in red.stack], "core_n": red.core.n, "k4_core": red.is_k4}
    if red.is_k4:
        h = k4_core_solution(red)
        best_m = None
        extras.update(per_matching=[h.edge_count], lambdas=[1.0], average=float(h.edge_count))
    else:
        if red.core.n > enum_budget:
            raise BudgetExceededError(f"rainbow-free core has {red.core.n} vertices, budget {enum_budget}")
        combo = convex_combination_third(red.core, enum_budget, cut_budget)
        results = []
        for lam, mt in combo.terms:
            h_core, ecover = cover_pipeline(red.core, mt)
            results.append((reinsert_rainbows(h_core, red), lam, mt, len(ecover.components)))
        best = min(range(len(results)), key=lambda i: results[i][0].edge_count)
        h, _, best_m, _ = results[best]
        extras.update(
            per_matching=[r[0].edge_count for r in results],
            lambdas=[r[1] for r in results],
            average=float(sum(r[1] * r[0].edge_count for r in results)),
            components=[r[3] for r in results],
            combination=combo,
        )
        extras["core"] = red.core
        extras["core_labels"] = red.labels
    tour = shortcut_tour(g, eulerian_circuit(h))
    return SolveReport(
        algorithm="matchcomb",
        h=h,
        tour=tour,
        h_edges=h.edge_count,
        bound=matchcomb_bound(g.n),
        matching_used=best_m,
        wall_time=time.perf_counter() - t0,
        extras=extras,
    )
