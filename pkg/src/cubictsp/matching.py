"""Exact minimum-weight perfect matching, plus enumeration and 3-cut oracles.

The solver is Edmonds' primal-dual blossom algorithm in the classic
``O(n^3)`` formulation with integer dual variables (stored doubled). A
minimum-weight perfect matching is found as a maximum-weight
maximum-cardinality matching on flipped weights ``max(w) + 1 - w``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Mapping, Sequence

from .errors import BudgetExceededError, NoPerfectMatchingError, PreconditionError
from .graph import Multigraph, components

ENUM_BUDGET = 20
THREE_CUT_BUDGET = 24


@dataclass(frozen=True)
class PerfectMatching:
    edge_ids: frozenset[int]

    def __iter__(self):
        return iter(sorted(self.edge_ids))

    def __len__(self) -> int:
        return len(self.edge_ids)

    def __contains__(self, e: object) -> bool:
        return e in self.edge_ids

    def weight(self, w: Sequence[int] | Mapping[int, int]) -> int:
        return sum(w[e] for e in self.edge_ids)


def is_perfect_matching(g: Multigraph, edge_ids) -> bool:
    covered = [0] * g.n
    for e in edge_ids:
        u, v = g.edges[e]
        covered[u] += 1
        covered[v] += 1
    return all(c == 1 for c in covered)


# ---------------------------------------------------------------------------
# blossom algorithm


def _trampoline(gen) -> None:
    # run nested generator "calls" without growing the Python stack
    stack = [gen]
    while stack:
        try:
            stack.append(next(stack[-1]))
        except StopIteration:
            stack.pop()


def max_weight_matching(n: int, edges: Sequence[tuple[int, int, int]], maxcardinality: bool = False) -> list[int]:
    """Maximum-weight matching of a simple graph with integer weights.

    Returns ``mate`` with ``mate[v]`` the partner of ``v`` or ``-1``. With
    ``maxcardinality`` the result has maximum weight among the matchings of
    maximum cardinality.
    """
    nedge = len(edges)
    if nedge == 0:
        return [-1] * n
    maxweight = max(0, max(w for _, _, w in edges))
    # endpoint[p] is the vertex at end p of edge p // 2
    endpoint = [edges[p >> 1][p & 1] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(n)]
    for k, (i, j, _w) in enumerate(edges):
        neighbend[i].append(2 * k + 1)
        neighbend[j].append(2 * k)
    mate = [-1] * n  # remote endpoint index of the matched edge, during the run
    label = [0] * (2 * n)
    labelend = [-1] * (2 * n)
    inblossom = list(range(n))
    blossomparent = [-1] * (2 * n)
    blossomchilds: list = [None] * (2 * n)
    blossombase = list(range(n)) + [-1] * n
    blossomendps: list = [None] * (2 * n)
    bestedge = [-1] * (2 * n)
    blossombestedges: list = [None] * (2 * n)
    unusedblossoms = list(range(n, 2 * n))
    dualvar = [maxweight] * n + [0] * n
    allowedge = [False] * nedge
    queue: list[int] = []

    def slack(k: int) -> int:
        i, j, wt = edges[k]
        return dualvar[i] + dualvar[j] - 2 * wt

    def leaves(b: int) -> list[int]:
        if b < n:
            return [b]
        out = []
        stack = [b]
        while stack:
            t = stack.pop()
            if t < n:
                out.append(t)
            else:
                stack.extend(reversed(blossomchilds[t]))
        return out

    def assign_label(w: int, t: int, p: int) -> None:
        b = inblossom[w]
        label[w] = label[b] = t
        labelend[w] = labelend[b] = p
        bestedge[w] = bestedge[b] = -1
        if t == 1:
            queue.extend(leaves(b))
        else:
            base = blossombase[b]
            assign_label(endpoint[mate[base]], 1, mate[base] ^ 1)

    def scan_blossom(v: int, w: int) -> int:
        # trace back from v and w; returns the base of a new blossom or -1
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base: int, k: int) -> None:
        v, w, _wt = edges[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path: list[int] = []
        endps: list[int] = []
        blossomchilds[b] = path
        blossomendps[b] = endps
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for v in leaves(b):
            if label[inblossom[v]] == 2:
                queue.append(v)
            inblossom[v] = b
        bestedgeto = [-1] * (2 * n)
        for bv in path:
            if blossombestedges[bv] is None:
                nblists = [[p >> 1 for p in neighbend[v]] for v in leaves(bv)]
            else:
                nblists = [blossombestedges[bv]]
            for nblist in nblists:
                for k2 in nblist:
                    i, j, _ = edges[k2]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if bj != b and label[bj] == 1 and (bestedgeto[bj] == -1 or slack(k2) < slack(bestedgeto[bj])):
                        bestedgeto[bj] = k2
            blossombestedges[bv] = None
            bestedge[bv] = -1
        blossombestedges[b] = [k2 for k2 in bestedgeto if k2 != -1]
        bestedge[b] = -1
        for k2 in blossombestedges[b]:
            if bestedge[b] == -1 or slack(k2) < slack(bestedge[b]):
                bestedge[b] = k2

    def expand_blossom(b: int, endstage: bool):
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < n:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                yield expand_blossom(s, endstage)
            else:
                for v in leaves(s):
                    inblossom[v] = s
        if not endstage and label[b] == 2:
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = blossomchilds[b].index(entrychild)
            if j & 1:
                j -= len(blossomchilds[b])
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[blossomendps[b][j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[blossomendps[b][j - endptrick] >> 1] = True
                j += jstep
                p = blossomendps[b][j - endptrick] ^ endptrick
                allowedge[p >> 1] = True
                j += jstep
            bv = blossomchilds[b][j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while blossomchilds[b][j] != entrychild:
                bv = blossomchilds[b][j]
                if label[bv] == 1:
                    j += jstep
                    continue
                v = -1
                for v in leaves(bv):
                    if label[v] != 0:
                        break
                if label[v] != 0:
                    label[v] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(v, 2, labelend[v])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b: int, v: int):
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= n:
            yield augment_blossom(t, v)
        i = j = blossomchilds[b].index(t)
        if i & 1:
            j -= len(blossomchilds[b])
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = blossomchilds[b][j]
            p = blossomendps[b][j - endptrick] ^ endptrick
            if t >= n:
                yield augment_blossom(t, endpoint[p])
            j += jstep
            t = blossomchilds[b][j]
            if t >= n:
                yield augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = blossomchilds[b][i:] + blossomchilds[b][:i]
        blossomendps[b] = blossomendps[b][i:] + blossomendps[b][:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k: int) -> None:
        v, w, _wt = edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= n:
                    _trampoline(augment_blossom(bs, s))
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= n:
                    _trampoline(augment_blossom(bt, j))
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(n):
        label[:] = [0] * (2 * n)
        bestedge[:] = [-1] * (2 * n)
        blossombestedges[n:] = [None] * n
        allowedge[:] = [False] * nedge
        queue[:] = []
        for v in range(n):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)
        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p >> 1
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    kslack = 0
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break
            # dual adjustment
            deltatype = -1
            delta = deltaedge = deltablossom = None
            if not maxcardinality:
                deltatype = 1
                delta = min(dualvar[:n])
            for v in range(n):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 2, bestedge[v]
            for b in range(2 * n):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    d = slack(bestedge[b]) // 2
                    if deltatype == -1 or d < delta:
                        delta, deltatype, deltaedge = d, 3, bestedge[b]
            for b in range(n, 2 * n):
                if blossombase[b] >= 0 and blossomparent[b] == -1 and label[b] == 2 and (deltatype == -1 or dualvar[b] < delta):
                    delta, deltatype, deltablossom = dualvar[b], 4, b
            if deltatype == -1:
                deltatype = 1
                delta = max(0, min(dualvar[:n]))
            for v in range(n):
                lab = label[inblossom[v]]
                if lab == 1:
                    dualvar[v] -= delta
                elif lab == 2:
                    dualvar[v] += delta
            for b in range(n, 2 * n):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta
            if deltatype == 1:
                break
            if deltatype == 2:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                queue.append(i)
            else:
                _trampoline(expand_blossom(deltablossom, False))
        if not augmented:
            break
        for b in range(n, 2 * n):
            if blossomparent[b] == -1 and blossombase[b] >= 0 and label[b] == 1 and dualvar[b] == 0:
                _trampoline(expand_blossom(b, True))

    return [endpoint[p] if p >= 0 else -1 for p in mate]


def min_weight_perfect_matching(g: Multigraph, w: Sequence[int]) -> PerfectMatching:
    """Exact minimum of ``sum(w[e])`` over all perfect matchings of ``g``.

    Parallel edges are reduced to their lightest copy (lowest id on ties)
    before solving; the result refers to edge ids of ``g``.
    """
    if len(w) != g.m:
        raise PreconditionError(f"weight vector has {len(w)} entries for {g.m} edges")
    if g.n % 2:
        raise NoPerfectMatchingError(f"odd vertex count {g.n}")
    if g.n == 0:
        return PerfectMatching(frozenset())
    best: dict[tuple[int, int], int] = {}
    for e, (u, v) in enumerate(g.edges):
        key = (u, v) if u < v else (v, u)
        cur = best.get(key)
        if cur is None or w[e] < w[cur]:
            best[key] = e
    reps = sorted(best.values())
    top = max(int(w[e]) for e in reps)
    flipped = [(g.edges[e][0], g.edges[e][1], top + 1 - int(w[e])) for e in reps]
    mate = max_weight_matching(g.n, flipped, maxcardinality=True)
    if any(x == -1 for x in mate):
        raise NoPerfectMatchingError("graph has no perfect matching")
    chosen = frozenset(best[(min(u, v), max(u, v))] for u, v in ((u, mate[u]) for u in range(g.n) if u < mate[u]))
    return PerfectMatching(chosen)


# ---------------------------------------------------------------------------
# oracles


def enumerate_perfect_matchings(g: Multigraph, budget: int = ENUM_BUDGET) -> list[PerfectMatching]:
    """All perfect matchings, by branching on the lowest uncovered vertex."""
    if g.n > budget:
        raise BudgetExceededError(f"n = {g.n} exceeds the enumeration budget {budget}")
    if g.n % 2:
        return []
    covered = [False] * g.n
    chosen: list[int] = []
    out: list[PerfectMatching] = []

    def rec(start: int) -> None:
        v = start
        while v < g.n and covered[v]:
            v += 1
        if v == g.n:
            out.append(PerfectMatching(frozenset(chosen)))
            return
        covered[v] = True
        for eid, u in g.incidence[v]:
            if not covered[u]:
                covered[u] = True
                chosen.append(eid)
                rec(v + 1)
                chosen.pop()
                covered[u] = False
        covered[v] = False

    rec(0)
    return out


def minimal_three_cuts(g: Multigraph, budget: int = THREE_CUT_BUDGET) -> list[frozenset[int]]:
    """All 3-edge cuts of a bridgeless graph that contain no smaller cut."""
    if g.n > budget:
        raise BudgetExceededError(f"n = {g.n} exceeds the 3-cut budget {budget}")

    def disconnects(removed: set[int]) -> bool:
        labels = components(g.n, (uv for e, uv in enumerate(g.edges) if e not in removed))
        return any(lab != 0 for lab in labels)

    pair_cuts = {frozenset(p) for p in combinations(range(g.m), 2) if disconnects(set(p))}
    cuts = []
    for triple in combinations(range(g.m), 3):
        if any(frozenset(p) in pair_cuts for p in combinations(triple, 2)):
            continue
        if disconnects(set(triple)):
            cuts.append(frozenset(triple))
    return cuts


def is_three_cut_matching(g: Multigraph, m: PerfectMatching, cuts: list[frozenset[int]] | None = None,
                          budget: int = THREE_CUT_BUDGET) -> bool:
    """True iff ``m`` meets every minimal 3-cut of ``g`` in exactly one edge."""
    if cuts is None:
        cuts = minimal_three_cuts(g, budget)
    return all(len(cut & m.edge_ids) == 1 for cut in cuts)
