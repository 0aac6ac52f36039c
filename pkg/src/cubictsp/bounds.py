"""Exact and LP lower-bound oracles, and closed-form optima for the F_k family."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import BudgetExceededError, DisconnectedGraphError, PreconditionError
from .graph import EulerianSubgraph, Multigraph, Tour, eulerian_circuit, shortcut_tour
from .lp import solve_lp
from .report import SolveReport

HK_BUDGET = 18
LP_BUDGET = 40
CUT_TOL = 1e-7


def _distances(g: Multigraph) -> np.ndarray:
    dist = g.distance_matrix()
    if g.n and (dist < 0).any():
        raise DisconnectedGraphError("graph is not connected")
    return dist


# ---------------------------------------------------------------------------
# Held-Karp


def held_karp_tour(g: Multigraph, budget: int = HK_BUDGET) -> Tour:
    """Optimal tour of the metric completion by bitmask dynamic programming."""
    n = g.n
    if n > budget:
        raise BudgetExceededError(f"n = {n} exceeds the Held-Karp budget {budget}")
    if n == 0:
        raise PreconditionError("empty graph")
    dist = _distances(g)
    if n == 1:
        return Tour((0,), 0)
    if n == 2:
        return Tour((0, 1), 2 * int(dist[0, 1]))
    best, last, parent = kernels.held_karp_table(np.ascontiguousarray(dist, dtype=np.int64))
    order = []
    mask = (1 << (n - 1)) - 1
    j = int(last)
    while j >= 0:
        order.append(j + 1)
        pj = int(parent[mask, j])
        mask ^= 1 << j
        j = pj
    order.append(0)
    order.reverse()
    return Tour(tuple(order), int(best))


def held_karp_opt(g: Multigraph, budget: int = HK_BUDGET) -> int:
    return held_karp_tour(g, budget).length


def _path_edges(g: Multigraph, u: int, v: int) -> list[int]:
    """Edge ids of one shortest ``u``-``v`` path (BFS parents, lowest ids first)."""
    if u == v:
        return []
    prev = {u: (-1, -1)}
    frontier = [u]
    while v not in prev:
        nxt = []
        for x in frontier:
            for e, y in g.incidence[x]:
                if y not in prev:
                    prev[y] = (x, e)
                    nxt.append(y)
        if not nxt:
            raise DisconnectedGraphError(f"vertices {u} and {v} are not connected")
        frontier = nxt
    out = []
    while v != u:
        v, e = prev[v]
        out.append(e)
    return out


def solve_exact(g: Multigraph, budget: int = HK_BUDGET) -> SolveReport:
    """Optimal tour, expanded into shortest paths to give a spanning Eulerian multiset.

    Multiplicities above 2 are reduced in pairs; the result is a spanning
    Eulerian subgraph with at most ``opt`` edges.
    """
    t0 = time.perf_counter()
    tour = held_karp_tour(g, budget)
    counts = [0] * g.m
    order = tour.order
    if g.n > 1:
        for i in range(len(order)):
            for e in _path_edges(g, order[i], order[(i + 1) % len(order)]):
                counts[e] += 1
    mult = tuple(c - 2 * ((c - 1) // 2) if c else 0 for c in counts)
    h = EulerianSubgraph(g, mult)
    final = shortcut_tour(g, eulerian_circuit(h)) if g.n > 1 else tour
    return SolveReport(
        algorithm="exact",
        h=h,
        tour=final,
        h_edges=h.edge_count,
        bound=Fraction(tour.length),
        wall_time=time.perf_counter() - t0,
        extras={"opt": tour.length, "opt_order": list(tour.order)},
    )


# ---------------------------------------------------------------------------
# subtour elimination relaxation


@dataclass(frozen=True)
class SerResult:
    value: float
    x: dict[tuple[int, int], float]
    active_cuts: tuple[frozenset[int], ...]
    iterations: int


def ser_value(g: Multigraph, budget: int = LP_BUDGET, max_rounds: int = 500) -> SerResult:
    """Subtour elimination LP over the metric completion, by cutting planes.

    Degree rows ``x(delta(v)) = 2``; violated ``x(delta(S)) >= 2`` rows come
    from the cut-of-the-phase sets of Stoer-Wagner on the current support.
    Every 2-vertex cut ends up satisfied, which enforces ``x <= 1``.
    """
    n = g.n
    if n > budget:
        raise BudgetExceededError(f"n = {n} exceeds the LP budget {budget}")
    dist = _distances(g)
    if n <= 2:
        val = 0.0 if n <= 1 else 2.0 * float(dist[0, 1])
        return SerResult(val, {(0, 1): 2.0} if n == 2 else {}, (), 0)
    iu, ju = np.triu_indices(n, 1)
    cost = dist[iu, ju].astype(np.float64)
    nvar = cost.size
    deg_rows = np.zeros((n, nvar))
    deg_rows[iu, np.arange(nvar)] = 1.0
    deg_rows[ju, np.arange(nvar)] = 1.0
    cuts: list[frozenset[int]] = []
    cut_rows: list[np.ndarray] = []
    rounds = 0
    while True:
        rounds += 1
        if rounds > max_rounds:
            raise BudgetExceededError(f"cutting-plane loop exceeded {max_rounds} rounds")
        res = solve_lp(cost, deg_rows, np.full(n, 2.0),
                       np.array(cut_rows) if cut_rows else None, np.full(len(cut_rows), 2.0))
        if res.status != "optimal":
            raise PreconditionError(f"SER LP is {res.status}")
        w = np.zeros((n, n))
        w[iu, ju] = res.x
        w[ju, iu] = res.x
        values, masks = kernels.stoer_wagner_phases(w)
        added = False
        for val, mask in zip(values, masks):
            if val < 2.0 - CUT_TOL:
                side = frozenset(int(v) for v in np.flatnonzero(mask))
                if 0 in side:
                    side = frozenset(range(n)) - side
                if side in cuts:
                    continue
                inside = np.zeros(n, dtype=bool)
                inside[list(side)] = True
                cuts.append(side)
                cut_rows.append((inside[iu] != inside[ju]).astype(np.float64))
                added = True
        if not added:
            x = {(int(a), int(b)): float(v) for a, b, v in zip(iu, ju, res.x) if v > 1e-12}
            return SerResult(float(res.value), x, tuple(cuts), rounds)


# ---------------------------------------------------------------------------
# F_k closed forms


def fk_opt_formula(k: int) -> tuple[int, int]:
    """Closed forms ``(T(k), P(k))`` for the F_k recursion.

    Odd k: ``T = (22 * 2**k - 14) / 3``, ``P = (22 * 2**k - 8) / 3``;
    even k: both equal ``(22 * 2**k - 10) / 3``.
    """
    if k < 1:
        raise PreconditionError("k must be at least 1")
    base = 22 * (1 << k)
    if k % 2:
        return (base - 14) // 3, (base - 8) // 3
    return (base - 10) // 3, (base - 10) // 3


def fk_recurrence(k: int) -> tuple[int, int]:
    """``T, P`` by iterating ``T' = min(6 + 2T, 2 + 2P)``, ``P' = 4 + T + P`` from ``(10, 12)``."""
    if k < 1:
        raise PreconditionError("k must be at least 1")
    t, p = 10, 12
    for _ in range(k - 1):
        t, p = min(6 + 2 * t, 2 + 2 * p), 4 + t + p
    return t, p


def fk_lower_bound(n: int) -> Fraction:
    """``11n/9 - 8/9``."""
    return Fraction(11 * n - 8, 9)
