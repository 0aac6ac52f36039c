"""Vertex-disjoint cycles given as edge sets."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import PreconditionError
from .graph import Multigraph


@dataclass(frozen=True)
class Cycle:
    """Closed path ``vertices[0] -> vertices[1] -> ... -> vertices[0]``.

    ``edges[i]`` joins ``vertices[i]`` and ``vertices[i + 1]`` (cyclically).
    A pair of parallel edges forms a 2-cycle.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


def two_factor_cycles(g: Multigraph, edge_ids: Iterable[int]) -> list[Cycle]:
    """Split a 2-regular spanning edge set into its cycles.

    Each cycle starts at its smallest vertex and leaves through the smaller
    of its two edge ids; cycles are listed by starting vertex.
    """
    chosen = sorted(set(edge_ids))
    inc: list[list[int]] = [[] for _ in range(g.n)]
    for e in chosen:
        u, v = g.edges[e]
        inc[u].append(e)
        inc[v].append(e)
    for v in range(g.n):
        if len(inc[v]) != 2:
            raise PreconditionError(f"vertex {v} has degree {len(inc[v])} in the edge set, expected 2")
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        verts = [s]
        edges = []
        seen[s] = True
        e = min(inc[s])
        cur = s
        while True:
            edges.append(e)
            cur = g.other(e, cur)
            if cur == s:
                break
            seen[cur] = True
            verts.append(cur)
            a, b = inc[cur]
            e = b if a == e else a
        out.append(Cycle(tuple(verts), tuple(edges)))
    return out
