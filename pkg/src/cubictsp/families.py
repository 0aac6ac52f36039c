"""Generators for the graph families used by the experiments and tests."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PreconditionError
from .graph import Multigraph, find_bridges, is_connected

FAMILIES = (
    "petersen", "k4", "triple_edge", "fk", "three_path", "chorded_gap", "k2m", "random_cubic",
    "prism", "k33", "cube", "random_subcubic", "random_bridged",
)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    param: int | None = None
    seed: int = 0
    simple: bool = False


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, outer + spokes + inner)


def k4() -> Multigraph:
    return Multigraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def triple_edge() -> Multigraph:
    return Multigraph(2, [(0, 1)] * 3)


def prism() -> Multigraph:
    return Multigraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def k33() -> Multigraph:
    return Multigraph(6, [(a, b) for a in range(3) for b in range(3, 6)])


def cube() -> Multigraph:
    return Multigraph(8, [(v, v ^ (1 << i)) for v in range(8) for i in range(3) if v < v ^ (1 << i)])


def k2m(m: int) -> Multigraph:
    """Complete bipartite graph K_{2,m}: hubs 0 and 1, leaves 2..m+1."""
    if m < 2:
        raise PreconditionError("K_{2,m} needs m >= 2")
    return Multigraph(m + 2, [(h, 2 + i) for i in range(m) for h in (0, 1)])


def three_path(k: int) -> Multigraph:
    """Two hubs joined by three internally disjoint paths of ``k`` edges."""
    if k < 2:
        raise PreconditionError("three_path needs k >= 2")
    edges = []
    nxt = 2
    for _ in range(3):
        prev = 0
        for _ in range(k - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Multigraph(nxt, edges)


def fk(k: int) -> Multigraph:
    """Two depth-``k`` complete binary trees whose leaves are paired up.

    Roots ``s`` and ``t`` are adjacent. The i-th leaf of each tree is joined
    to both ends of a fresh edge ``pq``. Cubic, bridgeless, ``6 * 2**k - 2``
    vertices.
    """
    if k < 1:
        raise PreconditionError("fk needs k >= 1")
    edges = []
    size = (1 << (k + 1)) - 1  # heap-ordered tree, vertex i has children 2i+1, 2i+2

    def tree(offset: int) -> list[int]:
        for i in range(size):
            for c in (2 * i + 1, 2 * i + 2):
                if c < size:
                    edges.append((offset + i, offset + c))
        return [offset + i for i in range(size >> 1, size)]

    left = tree(0)
    right = tree(size)
    edges.append((0, size))
    nxt = 2 * size
    for a, b in zip(left, right):
        p, q = nxt, nxt + 1
        nxt += 2
        edges.extend([(p, q), (a, p), (a, q), (b, p), (b, q)])
    return Multigraph(nxt, edges)


def chorded_gap(k: int) -> Multigraph:
    """``three_path(k)`` with every degree-2 vertex replaced by a chorded 4-cycle.

    The gadget for vertex ``x - v - y`` is ``u0 - a - v0 - b - u0`` plus the
    chord ``ab``, attached by ``x - u0`` and ``v0 - y``.
    """
    base = three_path(k)
    deg = base.degrees()
    ids = {}
    nxt = 0
    for v in range(base.n):
        if deg[v] == 3:
            ids[v] = nxt
            nxt += 1
    gadget = {}
    edges = []
    for v in range(base.n):
        if deg[v] == 2:
            u0, a, v0, b = nxt, nxt + 1, nxt + 2, nxt + 3
            nxt += 4
            gadget[v] = (u0, v0)
            edges.extend([(u0, a), (a, v0), (v0, b), (b, u0), (a, b)])
    used: dict[int, int] = {}
    for x, y in base.edges:
        ends = []
        for z in (x, y):
            if deg[z] == 3:
                ends.append(ids[z])
            else:
                # first attached edge uses u0, second uses v0
                side = used.get(z, 0)
                used[z] = side + 1
                ends.append(gadget[z][side])
        edges.append((ends[0], ends[1]))
    return Multigraph(nxt, edges)


def _bridgeless_connected(g: Multigraph) -> bool:
    return is_connected(g) and not find_bridges(g)


def random_cubic(n: int, seed: int = 0, simple: bool = False, max_tries: int = 10_000) -> Multigraph:
    """Uniform pairing-model cubic multigraph, rejected until connected and bridgeless.

    Loops are always rejected; parallel edges only when ``simple``.
    """
    if n < 2 or n % 2:
        raise PreconditionError("random cubic graphs need an even n >= 2")
    if simple and n < 4:
        raise PreconditionError("simple cubic graphs need n >= 4")
    rng = np.random.default_rng(seed)
    points = np.repeat(np.arange(n), 3)
    for _ in range(max_tries):
        perm = rng.permutation(points)
        pairs = perm.reshape(-1, 2)
        if (pairs[:, 0] == pairs[:, 1]).any():
            continue
        edges = [(int(min(a, b)), int(max(a, b))) for a, b in pairs]
        if simple and len(set(edges)) != len(edges):
            continue
        edges.sort()
        g = Multigraph(n, edges)
        if _bridgeless_connected(g):
            return g
    raise PreconditionError(f"no connected bridgeless cubic graph found in {max_tries} draws")


def random_subcubic(n3: int, seed: int = 0, subdivisions: int | None = None) -> Multigraph:
    """Random cubic multigraph on ``n3`` vertices with edges subdivided at random.

    ``subdivisions`` degree-2 vertices are spread over uniformly chosen edges
    (default: one per skeleton edge on average).
    """
    rng = np.random.default_rng(seed)
    base = random_cubic(n3, seed=int(rng.integers(1 << 31)))
    extra = base.m if subdivisions is None else subdivisions
    counts = np.bincount(rng.integers(0, base.m, size=extra), minlength=base.m)
    edges = []
    nxt = base.n
    for e, (u, v) in enumerate(base.edges):
        prev = u
        for _ in range(int(counts[e])):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Multigraph(nxt, edges)


def random_bridged(blocks: int, seed: int = 0) -> Multigraph:
    """Random connected subcubic graph with bridges.

    Builds ``blocks`` pieces, each a single vertex or a bridgeless subcubic
    graph (a cycle or a subdivided cubic graph), and joins them in a random
    tree by bridges attached at vertices of degree < 3.
    """
    if blocks < 2:
        raise PreconditionError("need at least two blocks")
    rng = np.random.default_rng(seed)
    edges: list[tuple[int, int]] = []
    free: list[list[int]] = []  # per block, vertices with spare degree (repeated per unit)
    nxt = 0
    for _ in range(blocks):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            free.append([nxt, nxt, nxt])
            nxt += 1
        elif kind == 1:
            length = int(rng.integers(3, 8))
            vs = list(range(nxt, nxt + length))
            edges.extend((vs[i], vs[(i + 1) % length]) for i in range(length))
            free.append(vs)
            nxt += length
        else:
            sub = random_subcubic(2 * int(rng.integers(1, 4)), seed=int(rng.integers(1 << 31)))
            edges.extend((a + nxt, b + nxt) for a, b in sub.edges)
            deg = sub.degrees()
            free.append([v + nxt for v in range(sub.n) if deg[v] == 2])
            nxt += sub.n
    # random tree over blocks: attach block i to an earlier block with spare degree
    for i in range(1, blocks):
        order = rng.permutation(i)
        target = next((int(j) for j in order if free[int(j)]), None)
        if target is None or not free[i]:
            raise PreconditionError("ran out of attachment points")
        a = free[target].pop(int(rng.integers(len(free[target]))))
        b = free[i].pop(int(rng.integers(len(free[i]))))
        edges.append((a, b))
    g = Multigraph(nxt, edges)
    if any(d > 3 for d in g.degrees()):
        raise PreconditionError("degree overflow while attaching bridges")
    return g


def gen_family(spec: FamilySpec) -> Multigraph:
    name, p = spec.name, spec.param
    fixed = {"petersen": petersen, "k4": k4, "triple_edge": triple_edge, "prism": prism, "k33": k33, "cube": cube}
    if name in fixed:
        return fixed[name]()
    if p is None:
        raise PreconditionError(f"family {name!r} needs a parameter")
    if name == "fk":
        return fk(p)
    if name == "three_path":
        return three_path(p)
    if name == "chorded_gap":
        return chorded_gap(p)
    if name == "k2m":
        return k2m(p)
    if name == "random_cubic":
        return random_cubic(p, seed=spec.seed, simple=spec.simple)
    if name == "random_subcubic":
        return random_subcubic(p, seed=spec.seed)
    if name == "random_bridged":
        return random_bridged(p, seed=spec.seed)
    raise PreconditionError(f"unknown family {name!r}")
