"""Matching-based 4n/3 approximation for bridgeless subcubic graphs.

Pipeline: a DFS tree ``T`` splits the edges into tree edges and back edges
``B``. Each back edge ``b`` is tied to the tree edge ``t_b`` leaving its
ancestor endpoint toward its descendant endpoint. With ``R = B + {t_b}``
the edges weighted ``-1`` on ``R`` and ``+1`` elsewhere, a minimum-weight
perfect matching ``M`` yields the Eulerian multigraph ``E - (M & R) + (M - R)``.
Because every ``t_b`` shares a vertex with ``b``, no perfect matching takes
both, and deleting ``M & R`` keeps the graph connected: each removed tree
edge can be replaced by its partner back edge.

Subcubic inputs are reduced to cubic ones by contracting maximal paths
through degree-2 vertices and weighting each contracted edge by the length
of its path.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .cycles import Cycle, two_factor_cycles
from .errors import BridgeError, DegreeError, DisconnectedGraphError, EulerianError, PreconditionError
from .graph import (
    EulerianSubgraph,
    Multigraph,
    components,
    eulerian_circuit,
    find_bridges,
    is_connected,
    shortcut_tour,
)
from .matching import PerfectMatching, min_weight_perfect_matching
from .report import SolveReport


@dataclass(frozen=True)
class DfsStructure:
    root: int
    tree_edges: frozenset[int]
    back_edges: frozenset[int]
    tb_map: Mapping[int, int]  # back edge -> t_b
    partner: Mapping[int, int]  # t_b -> smallest back edge mapped to it
    removable: frozenset[int]
    parent_edge: tuple[int, ...]  # entering tree edge per vertex, -1 at the root
    depth: tuple[int, ...]

    @property
    def tb_edges(self) -> frozenset[int]:
        return frozenset(self.partner)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return sorted(self.partner.items())


def dfs_structure(g: Multigraph, root: int = 0) -> DfsStructure:
    """Iterative DFS scanning incidence lists in edge-id order."""
    n = g.n
    if not 0 <= root < max(n, 1):
        raise PreconditionError(f"root {root} out of range")
    depth = [-1] * n
    parent_edge = [-1] * n
    kind = [0] * g.m  # 1 tree, 2 back
    tb_map: dict[int, int] = {}
    if n:
        depth[root] = 0
        path_edges: list[int] = [-1]  # entering tree edge of the stack vertex at each depth
        stack = [(root, 0)]
        while stack:
            v, ptr = stack[-1]
            inc = g.incidence[v]
            if ptr == len(inc):
                stack.pop()
                path_edges.pop()
                continue
            stack[-1] = (v, ptr + 1)
            eid, w = inc[ptr]
            if kind[eid]:
                continue
            if depth[w] < 0:
                kind[eid] = 1
                depth[w] = depth[v] + 1
                parent_edge[w] = eid
                path_edges.append(eid)
                stack.append((w, 0))
            else:
                # w is an ancestor of v still on the stack
                kind[eid] = 2
                tb_map[eid] = path_edges[depth[w] + 1]
    if any(d < 0 for d in depth):
        raise DisconnectedGraphError("graph is not connected")
    partner: dict[int, int] = {}
    for b in sorted(tb_map):
        partner.setdefault(tb_map[b], b)
    tree = frozenset(e for e in range(g.m) if kind[e] == 1)
    back = frozenset(tb_map)
    return DfsStructure(
        root=root,
        tree_edges=tree,
        back_edges=back,
        tb_map=tb_map,
        partner=partner,
        removable=back | frozenset(partner),
        parent_edge=tuple(parent_edge),
        depth=tuple(depth),
    )


def ms_weights(g: Multigraph, r: Iterable[int]) -> list[int]:
    rs = set(r)
    return [-1 if e in rs else 1 for e in range(g.m)]


def build_eulerian_h(g: Multigraph, m: PerfectMatching, r: Iterable[int]) -> EulerianSubgraph:
    rs = set(r)
    mult = [1] * g.m
    for e in m.edge_ids:
        mult[e] = 0 if e in rs else 2
    return EulerianSubgraph(g, tuple(mult))


def swap_tree_edges(d: DfsStructure, swapped: Iterable[int]) -> frozenset[int]:
    """Replace each given ``t_b`` by its partner back edge."""
    out = set(d.tree_edges)
    for t in swapped:
        out.discard(t)
        out.add(d.partner[t])
    return frozenset(out)


def swapped_spanning_tree(d: DfsStructure, m: PerfectMatching) -> frozenset[int]:
    return swap_tree_edges(d, (e for e in m.edge_ids if e in d.partner))


def cover_cycles(h: EulerianSubgraph) -> list[Cycle]:
    """Cycles formed by the multiplicity-1 edges of a cubic solution."""
    return two_factor_cycles(h.base, (e for e, k in enumerate(h.multiplicity) if k == 1))


def extract_cycle_cover(report: SolveReport) -> list[Cycle]:
    if report.cycle_cover is not None:
        return report.cycle_cover
    return cover_cycles(report.h)


# ---------------------------------------------------------------------------
# subcubic reduction


def contract_degree2_paths(g: Multigraph) -> tuple[Multigraph, list[tuple[int, ...]]]:
    """Replace every maximal path through degree-2 vertices by one edge.

    Returns the contracted cubic multigraph (degree-3 vertices renumbered in
    increasing order) and, per contracted edge, the original edge ids along
    its path. A path is listed from the end whose boundary edge has the
    smaller id; contracted edges are ordered by their smallest original id,
    so a cubic input maps to itself.
    """
    deg = g.degrees()
    bad = [v for v, d in enumerate(deg) if d not in (2, 3)]
    if bad:
        raise DegreeError(f"vertex {bad[0]} has degree {deg[bad[0]]}, expected 2 or 3")
    hubs = [v for v in range(g.n) if deg[v] == 3]
    if not hubs:
        raise PreconditionError("graph has no degree-3 vertex (it is a bare cycle)")
    label = {v: i for i, v in enumerate(hubs)}
    assigned = [False] * g.m
    paths: list[tuple[tuple[int, ...], int, int]] = []
    for h in hubs:
        for eid, w in g.incidence[h]:
            if assigned[eid]:
                continue
            path = [eid]
            assigned[eid] = True
            prev, cur = eid, w
            while deg[cur] == 2:
                (e1, x1), (e2, x2) = g.incidence[cur]
                prev, cur = (e2, x2) if e1 == prev else (e1, x1)
                path.append(prev)
                assigned[prev] = True
            if cur == h:
                raise BridgeError(f"the third edge at vertex {h} is a bridge")
            a, b = h, cur
            if len(path) == 1:
                a, b = g.edges[eid]
            elif path[-1] < path[0]:
                path.reverse()
                a, b = b, a
            paths.append((tuple(path), a, b))
    paths.sort(key=lambda p: min(p[0]))
    gc = Multigraph(len(hubs), [(label[a], label[b]) for _, a, b in paths])
    return gc, [p for p, _, _ in paths]


def subcubic_weights(gc: Multigraph, r: Iterable[int], qmap: Sequence[Sequence[int]]) -> list[int]:
    rs = set(r)
    return [len(qmap[e]) - 2 if e in rs else len(qmap[e]) for e in range(gc.m)]


def expand_to_subcubic(gc_h: EulerianSubgraph, qmap: Sequence[Sequence[int]], g: Multigraph,
                       m: PerfectMatching, r: Iterable[int]) -> EulerianSubgraph:
    rs = set(r)
    mult = [1] * g.m
    for e, path in enumerate(qmap):
        if e in m.edge_ids:
            want = 0 if e in rs else 2
        else:
            want = 1
        if gc_h.multiplicity[e] != want:
            raise EulerianError(f"contracted edge {e} has multiplicity {gc_h.multiplicity[e]}, expected {want}")
        if want == 2:
            for x in path:
                mult[x] = 2
        elif want == 0:
            mult[path[0]] = 0
            for x in path[1:]:
                mult[x] = 2
    return EulerianSubgraph(g, tuple(mult))


# ---------------------------------------------------------------------------
# full pipeline


def check_bridgeless_subcubic(g: Multigraph) -> None:
    if g.n < 2:
        raise PreconditionError("need at least 2 vertices")
    deg = g.degrees()
    high = [v for v, d in enumerate(deg) if d > 3]
    if high:
        raise DegreeError(f"vertex {high[0]} has degree {deg[high[0]]} > 3")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    bridges = find_bridges(g)
    if bridges:
        raise BridgeError(f"edge {min(bridges)} is a bridge")


def ms_bound(n: int) -> Fraction:
    return Fraction(4 * n - 2, 3)


def solve_ms(g: Multigraph, root: int = 0) -> SolveReport:
    """4n/3 - 2/3 spanning Eulerian subgraph of a bridgeless subcubic graph."""
    t0 = time.perf_counter()
    check_bridgeless_subcubic(g)
    deg = g.degrees()
    n3 = sum(1 for d in deg if d == 3)
    n2 = g.n - n3
    extras: dict = {"n2": n2, "n3": n3}
    if n3 == 0:
        h = EulerianSubgraph(g, (1,) * g.m)
        tour = shortcut_tour(g, eulerian_circuit(h))
        extras["c_matching"] = 0
        return SolveReport("ms", h, tour, h.edge_count, ms_bound(g.n),
                           cycle_cover=cover_cycles(h), wall_time=time.perf_counter() - t0, extras=extras)
    gc, qmap = contract_degree2_paths(g)
    identity = n2 == 0
    d = dfs_structure(gc, root if identity else 0)
    w = ms_weights(gc, d.removable) if identity else subcubic_weights(gc, d.removable, qmap)
    mt = min_weight_perfect_matching(gc, w)
    gc_h = build_eulerian_h(gc, mt, d.removable)
    h = gc_h if identity else expand_to_subcubic(gc_h, qmap, g, mt, d.removable)
    tour = shortcut_tour(g, eulerian_circuit(h))
    extras["c_matching"] = mt.weight(w)
    extras["weights"] = w
    if not identity:
        extras["contracted"] = gc
        extras["qmap"] = qmap
    return SolveReport(
        algorithm="ms",
        h=h,
        tour=tour,
        h_edges=h.edge_count,
        bound=ms_bound(g.n),
        matching_used=mt,
        r_set=d.removable,
        tree_star=swapped_spanning_tree(d, mt),
        cycle_cover=cover_cycles(h) if identity else None,
        wall_time=time.perf_counter() - t0,
        extras=extras,
    )


def is_spanning_tree(n: int, edges: Iterable[tuple[int, int]]) -> bool:
    edges = list(edges)
    if len(edges) != n - 1:
        return False
    return all(lab == 0 for lab in components(n, edges))
