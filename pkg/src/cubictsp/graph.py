"""Loop-free undirected multigraphs and the graph-TSP primitives built on them.

Edges are identified by their position in the edge list, so parallel edges
stay distinct everywhere. Every other module refers to edges by id.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import DisconnectedGraphError, EulerianError, InvalidGraphError


class Multigraph:
    """Immutable loop-free multigraph on vertices ``0..n-1``.

    ``incidence[v]`` lists ``(edge_id, other_endpoint)`` pairs in edge-id
    order. A vertex with a parallel pair appears once per copy.
    """

    __slots__ = ("n", "edges", "incidence", "_dist", "_csr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        n = int(n)
        if n < 0:
            raise InvalidGraphError(f"negative vertex count {n}")
        edge_list = []
        incidence: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for eid, (u, v) in enumerate(edges):
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidGraphError(f"edge {eid} = ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise InvalidGraphError(f"edge {eid} is a loop at vertex {u}")
            edge_list.append((u, v))
            incidence[u].append((eid, v))
            incidence[v].append((eid, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        self.incidence: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(x) for x in incidence)
        self._dist = None
        self._csr = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.incidence[v])

    def degrees(self) -> list[int]:
        return [len(inc) for inc in self.incidence]

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def neighbors(self, v: int) -> list[int]:
        return [w for _, w in self.incidence[v]]

    def is_simple(self) -> bool:
        seen = set()
        for u, v in self.edges:
            key = (u, v) if u < v else (v, u)
            if key in seen:
                return False
            seen.add(key)
        return True

    def is_cubic(self) -> bool:
        return all(len(inc) == 3 for inc in self.incidence)

    def is_subcubic(self) -> bool:
        return all(len(inc) <= 3 for inc in self.incidence)

    def edge_between(self, u: int, v: int) -> int | None:
        """Lowest edge id joining ``u`` and ``v``, or ``None``."""
        for eid, w in self.incidence[u]:
            if w == v:
                return eid
        return None

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        if self._csr is None:
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            indptr[1:] = np.cumsum([len(inc) for inc in self.incidence])
            indices = np.fromiter((w for inc in self.incidence for _, w in inc),
                                  dtype=np.int64, count=int(indptr[-1]))
            self._csr = (indptr, indices)
        return self._csr

    def distance_matrix(self) -> np.ndarray:
        """All-pairs hop counts (``-1`` where unreachable), computed once."""
        if self._dist is None:
            indptr, indices = self.csr()
            self._dist = kernels.all_pairs_bfs(indptr, indices, self.n)
            self._dist.setflags(write=False)
        return self._dist

    def subgraph(self, vertices: Sequence[int], edge_ids: Iterable[int]) -> tuple["Multigraph", list[int], list[int]]:
        """Relabelled subgraph; returns ``(graph, vertex_labels, edge_labels)``.

        ``vertex_labels[i]`` is the host vertex of new vertex ``i`` and
        ``edge_labels[j]`` the host edge of new edge ``j``.
        """
        labels = sorted(vertices)
        index = {v: i for i, v in enumerate(labels)}
        eids = sorted(edge_ids)
        sub = Multigraph(len(labels), [(index[self.edges[e][0]], index[self.edges[e][1]]) for e in eids])
        return sub, labels, eids

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, m={self.m})"


def build_multigraph(n: int, edge_list: Iterable[tuple[int, int]]) -> Multigraph:
    return Multigraph(n, edge_list)


# ---------------------------------------------------------------------------
# connectivity


def components(n: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Component label per vertex (labels are the smallest vertex of each)."""
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            if ru < rv:
                parent[rv] = ru
            else:
                parent[ru] = rv
    return [find(v) for v in range(n)]


def is_connected(g: Multigraph, skip: Iterable[int] = ()) -> bool:
    """Whether ``g`` minus the edge ids in ``skip`` is connected."""
    if g.n <= 1:
        return True
    skip = set(skip)
    labels = components(g.n, (e for i, e in enumerate(g.edges) if i not in skip))
    return all(lab == 0 for lab in labels)


def find_bridges(g: Multigraph) -> set[int]:
    """Edge ids whose removal disconnects ``g`` (iterative low-link DFS).

    Only the tree edge used to enter a vertex is skipped when scanning its
    incidence list, so a parallel copy of it counts as a back edge.
    """
    if not is_connected(g):
        raise DisconnectedGraphError("find_bridges requires a connected graph")
    n = g.n
    order = [-1] * n
    low = [0] * n
    bridges: set[int] = set()
    counter = 0
    for root in range(n):
        if order[root] != -1:
            continue
        order[root] = low[root] = counter
        counter += 1
        stack = [(root, -1, iter(g.incidence[root]))]
        while stack:
            v, in_edge, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid == in_edge:
                    continue
                if order[w] == -1:
                    order[w] = low[w] = counter
                    counter += 1
                    stack.append((w, eid, iter(g.incidence[w])))
                    advanced = True
                    break
                low[v] = min(low[v], order[w])
            if advanced:
                continue
            stack.pop()
            if stack:
                parent = stack[-1][0]
                low[parent] = min(low[parent], low[v])
                if low[v] > order[parent]:
                    bridges.add(in_edge)
    return bridges


# ---------------------------------------------------------------------------
# Eulerian subgraphs


@dataclass(frozen=True)
class EulerianSubgraph:
    """Spanning connected even-degree edge multiset of ``base``.

    Validated on construction; raises :class:`EulerianError` otherwise.
    Multiplicities outside ``{0, 1, 2}`` are rejected.
    """

    base: Multigraph
    multiplicity: tuple[int, ...]

    def __post_init__(self):
        mult = self.multiplicity
        if len(mult) != self.base.m:
            raise EulerianError(f"multiplicity vector has {len(mult)} entries for {self.base.m} edges")
        if any(k not in (0, 1, 2) for k in mult):
            raise EulerianError("multiplicities must lie in {0, 1, 2}")
        problem = eulerian_defect(self.base, mult)
        if problem:
            raise EulerianError(problem)

    @classmethod
    def from_counts(cls, base: Multigraph, counts: Mapping[int, int]) -> "EulerianSubgraph":
        mult = [0] * base.m
        for e, k in counts.items():
            mult[e] += k
        return cls(base, tuple(mult))

    @property
    def edge_count(self) -> int:
        return sum(self.multiplicity)

    def support(self) -> list[int]:
        return [e for e, k in enumerate(self.multiplicity) if k]

    def degree(self, v: int) -> int:
        return sum(self.multiplicity[e] for e, _ in self.base.incidence[v])


def weighted_degrees(g: Multigraph, mult: Sequence[int]) -> list[int]:
    deg = [0] * g.n
    for e, k in enumerate(mult):
        if k:
            u, v = g.edges[e]
            deg[u] += k
            deg[v] += k
    return deg


def eulerian_defect(g: Multigraph, mult: Sequence[int]) -> str | None:
    """Reason ``mult`` is not a spanning Eulerian multi-subgraph, else ``None``."""
    if any(k < 0 for k in mult):
        return "negative multiplicity"
    deg = weighted_degrees(g, mult)
    odd = [v for v, d in enumerate(deg) if d % 2]
    if odd:
        return f"odd degree at vertex {odd[0]}"
    if g.n >= 2:
        bare = [v for v, d in enumerate(deg) if d == 0]
        if bare:
            return f"vertex {bare[0]} is not spanned"
    labels = components(g.n, (g.edges[e] for e, k in enumerate(mult) if k))
    if any(lab != 0 for lab in labels):
        return "support is disconnected"
    return None


def eulerian_circuit(h: EulerianSubgraph) -> list[int]:
    """Closed walk using edge ``e`` exactly ``h.multiplicity[e]`` times.

    Iterative Hierholzer from the lowest-index vertex of positive degree.
    """
    g = h.base
    remaining = list(h.multiplicity)
    if not any(remaining):
        return []
    if eulerian_defect(g, remaining):
        raise EulerianError(eulerian_defect(g, remaining))
    start = next(v for v in range(g.n) if any(remaining[e] for e, _ in g.incidence[v]))
    ptr = [0] * g.n
    stack: list[tuple[int, int]] = [(start, -1)]
    circuit: list[int] = []
    while stack:
        v, via = stack[-1]
        inc = g.incidence[v]
        while ptr[v] < len(inc) and remaining[inc[ptr[v]][0]] == 0:
            ptr[v] += 1
        if ptr[v] == len(inc):
            stack.pop()
            if via >= 0:
                circuit.append(via)
            continue
        eid, w = inc[ptr[v]]
        remaining[eid] -= 1
        stack.append((w, eid))
    circuit.reverse()
    return circuit


def walk_vertices(g: Multigraph, circuit: Sequence[int]) -> list[int]:
    """Vertex sequence of a closed walk given by edge ids (start repeated at the end)."""
    if not circuit:
        return []
    for start in g.edges[circuit[0]]:
        seq = [start]
        cur = start
        ok = True
        for eid in circuit:
            a, b = g.edges[eid]
            if cur == a:
                cur = b
            elif cur == b:
                cur = a
            else:
                ok = False
                break
            seq.append(cur)
        if ok and cur == start:
            return seq
    raise EulerianError("edge sequence is not a closed walk")


# ---------------------------------------------------------------------------
# tours


@dataclass(frozen=True)
class Tour:
    order: tuple[int, ...]
    length: int


def metric_distance(g: Multigraph, u: int, v: int) -> int:
    """Hop count of a shortest ``u``-``v`` path (single BFS)."""
    if u == v:
        return 0
    if g._dist is not None:
        d = int(g._dist[u, v])
    else:
        seen = {u: 0}
        queue = deque([u])
        d = -1
        while queue and d < 0:
            x = queue.popleft()
            for _, y in g.incidence[x]:
                if y not in seen:
                    seen[y] = seen[x] + 1
                    if y == v:
                        d = seen[y]
                        break
                    queue.append(y)
    if d < 0:
        raise DisconnectedGraphError(f"vertices {u} and {v} are not connected")
    return d


def tour_length(g: Multigraph, order: Sequence[int]) -> int:
    """Cyclic sum of metric-completion distances along ``order``."""
    n = len(order)
    if sorted(order) != list(range(g.n)):
        raise InvalidGraphError("tour order is not a permutation of the vertices")
    if n <= 1:
        return 0
    if n >= 8:
        dist = g.distance_matrix()
        idx = np.asarray(order)
        vals = dist[idx, np.roll(idx, -1)]
        if (vals < 0).any():
            raise DisconnectedGraphError("tour joins disconnected vertices")
        return int(vals.sum())
    return sum(metric_distance(g, order[i], order[(i + 1) % n]) for i in range(n))


def shortcut_tour(g: Multigraph, circuit: Sequence[int]) -> Tour:
    """Keep the first visit of every vertex along a closed spanning walk."""
    if g.n == 1 and not circuit:
        return Tour((0,), 0)
    walk = walk_vertices(g, circuit)
    seen: set[int] = set()
    order = []
    for v in walk:
        if v not in seen:
            seen.add(v)
            order.append(v)
    if len(order) != g.n:
        raise EulerianError("circuit does not span all vertices")
    return Tour(tuple(order), tour_length(g, order))


def multiplicity_counts(mult: Sequence[int]) -> Counter:
    return Counter({e: k for e, k in enumerate(mult) if k})
