"""Subcubic graphs with bridges: solve each 2-edge-connected piece, double the bridges."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeError, DisconnectedGraphError
from .graph import EulerianSubgraph, Multigraph, Tour, components, eulerian_circuit, find_bridges, is_connected, shortcut_tour
from .ms import solve_ms
from .report import SolveReport


@dataclass(frozen=True)
class BridgeDecomposition:
    """Bridges of ``g`` and the pieces left after deleting them.

    ``singletons`` counts pieces consisting of a single vertex.
    """

    bridges: frozenset[int]
    components: tuple[tuple[int, ...], ...]

    @property
    def h(self) -> int:
        return len(self.bridges)

    @property
    def singletons(self) -> int:
        return sum(1 for c in self.components if len(c) == 1)


def decompose(g: Multigraph) -> BridgeDecomposition:
    bridges = find_bridges(g)
    labels = components(g.n, (uv for e, uv in enumerate(g.edges) if e not in bridges))
    groups: dict[int, list[int]] = {}
    for v, lab in enumerate(labels):
        groups.setdefault(lab, []).append(v)
    comps = tuple(tuple(vs) for _, vs in sorted(groups.items()))
    return BridgeDecomposition(frozenset(bridges), comps)


def bridge_bound(n: int, h: int, s: int) -> Fraction:
    return Fraction(4 * (n + h), 3) - Fraction(2 * (s + 1), 3)


def bridge_lower_bound(g: Multigraph) -> int:
    """``n + 2h - s`` with ``s`` the number of single-vertex pieces."""
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    d = decompose(g)
    return g.n + 2 * d.h - d.singletons


def solve_with_bridges(g: Multigraph) -> SolveReport:
    t0 = time.perf_counter()
    deg = g.degrees()
    high = [v for v, x in enumerate(deg) if x > 3]
    if high:
        raise DegreeError(f"vertex {high[0]} has degree {deg[high[0]]} > 3")
    if not is_connected(g):
        raise DisconnectedGraphError("graph is not connected")
    d = decompose(g)
    mult = [0] * g.m
    for e in d.bridges:
        mult[e] = 2
    piece_of = [0] * g.n
    for i, comp in enumerate(d.components):
        for v in comp:
            piece_of[v] = i
    inside: list[list[int]] = [[] for _ in d.components]
    for e, (u, _) in enumerate(g.edges):
        if e not in d.bridges:
            inside[piece_of[u]].append(e)
    pieces = []
    for i, comp in enumerate(d.components):
        if len(comp) == 1:
            continue
        sub, _, edge_labels = g.subgraph(comp, inside[i])
        rep = solve_ms(sub)
        for e_sub, k in enumerate(rep.h.multiplicity):
            mult[edge_labels[e_sub]] = k
        pieces.append({"vertices": comp, "h_edges": rep.h_edges, "bound": rep.bound})
    h = EulerianSubgraph(g, tuple(mult))
    tour = shortcut_tour(g, eulerian_circuit(h)) if g.n > 1 else Tour((0,), 0)
    return SolveReport(
        algorithm="bridges",
        h=h,
        tour=tour,
        h_edges=h.edge_count,
        bound=bridge_bound(g.n, d.h, d.singletons),
        wall_time=time.perf_counter() - t0,
        extras={"bridges": sorted(d.bridges), "h": d.h, "s": d.singletons, "pieces": pieces,
                "lower_bound": g.n + 2 * d.h - d.singletons},
    )
