"""Numeric inner loops, each in a numba flavour and a pure-numpy flavour.

The public names (``all_pairs_bfs``, ``held_karp_table``, ``stoer_wagner_phases``,
``simplex_run``) dispatch to the numba kernels when :data:`USE_NUMBA` is true
and to the numpy versions otherwise. Both flavours follow the same
tie-breaking rules, so they return identical results on identical input.
"""

from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit

HK_INF = 1 << 40

# ---------------------------------------------------------------------------
# all-pairs BFS distances on a CSR adjacency


@njit
def _all_pairs_bfs_numba(indptr, indices, n):
    dist = np.full((n, n), -1, np.int32)
    queue = np.empty(max(n, 1), np.int64)
    for s in range(n):
        dist[s, s] = 0
        head = 0
        tail = 1
        queue[0] = s
        while head < tail:
            u = queue[head]
            head += 1
            du = dist[s, u]
            for p in range(indptr[u], indptr[u + 1]):
                v = indices[p]
                if dist[s, v] < 0:
                    dist[s, v] = du + 1
                    queue[tail] = v
                    tail += 1
    return dist


def _all_pairs_bfs_numpy(indptr, indices, n):
    dist = np.full((n, n), -1, np.int32)
    if n == 0:
        return dist
    deg = np.diff(indptr)
    maxd = int(deg.max()) if n else 0
    # padded neighbour table; all sources advance one level per sweep
    nbr = np.full((n, max(maxd, 1)), -1, np.int64)
    for v in range(n):
        row = indices[indptr[v]:indptr[v + 1]]
        nbr[v, :row.size] = row
    frontier = np.eye(n, dtype=bool)
    visited = frontier.copy()
    np.fill_diagonal(dist, 0)
    level = 0
    while frontier.any():
        level += 1
        nxt = np.zeros((n, n), dtype=bool)
        for c in range(maxd):
            col = nbr[:, c]
            ok = col >= 0
            nxt[:, ok] |= frontier[:, col[ok]]
        nxt &= ~visited
        dist[nxt] = level
        visited |= nxt
        frontier = nxt
    return dist


# ---------------------------------------------------------------------------
# Held-Karp bitmask DP. Vertex 0 is the fixed start; bit j stands for vertex j+1.


@njit
def _held_karp_numba(dist):
    n = dist.shape[0]
    k = n - 1
    full = 1 << k
    inf = HK_INF
    dp = np.full((full, k), inf, np.int64)
    parent = np.full((full, k), -1, np.int8)
    for j in range(k):
        dp[1 << j, j] = dist[0, j + 1]
    for mask in range(1, full):
        for j in range(k):
            if (mask >> j) & 1 == 0:
                continue
            cur = dp[mask, j]
            if cur >= inf:
                continue
            for nxt in range(k):
                if (mask >> nxt) & 1:
                    continue
                nm = mask | (1 << nxt)
                val = cur + dist[j + 1, nxt + 1]
                if val < dp[nm, nxt]:
                    dp[nm, nxt] = val
                    parent[nm, nxt] = j
    best = inf
    last = -1
    for j in range(k):
        val = dp[full - 1, j] + dist[j + 1, 0]
        if val < best:
            best = val
            last = j
    return best, last, parent


def _popcount(a):
    if hasattr(np, "bitwise_count"):
        return np.bitwise_count(a)
    c = np.zeros_like(a)
    b = a.copy()
    while b.any():
        c += b & 1
        b >>= 1
    return c


def _held_karp_numpy(dist):
    n = dist.shape[0]
    k = n - 1
    full = 1 << k
    d = dist.astype(np.int64)
    dp = np.full((full, k), HK_INF, np.int64)
    parent = np.full((full, k), -1, np.int8)
    idx = np.arange(k)
    dp[1 << idx, idx] = d[0, 1:]
    masks = np.arange(full, dtype=np.int64)
    pop = _popcount(masks)
    inner = d[1:, 1:]
    for size in range(2, k + 1):
        layer = masks[pop == size]
        for j in range(k):
            sel = layer[((layer >> j) & 1) == 1]
            if sel.size == 0:
                continue
            cand = dp[sel ^ (1 << j)] + inner[:, j]
            arg = cand.argmin(axis=1)  # first minimum == smallest predecessor
            dp[sel, j] = cand[np.arange(sel.size), arg]
            parent[sel, j] = arg
    closing = dp[full - 1] + d[1:, 0]
    last = int(closing.argmin())
    return int(closing[last]), last, parent


# ---------------------------------------------------------------------------
# Stoer-Wagner: returns every cut-of-the-phase (value + original-vertex mask).


@njit
def _stoer_wagner_numba(weights):
    n = weights.shape[0]
    w = weights.copy()
    owner = np.arange(n)
    active = np.ones(n, np.bool_)
    nphase = max(n - 1, 0)
    values = np.empty(nphase)
    masks = np.zeros((nphase, n), np.bool_)
    for ph in range(nphase):
        added = np.zeros(n, np.bool_)
        key = np.zeros(n)
        prev = -1
        last = -1
        best = 0.0
        for _ in range(n - ph):
            sel = -1
            best = -1.0
            for v in range(n):
                if active[v] and not added[v] and key[v] > best:
                    best = key[v]
                    sel = v
            added[sel] = True
            prev = last
            last = sel
            for v in range(n):
                if active[v] and not added[v]:
                    key[v] += w[sel, v]
        values[ph] = best
        for v in range(n):
            masks[ph, v] = owner[v] == last
        for v in range(n):
            w[prev, v] += w[last, v]
            w[v, prev] = w[prev, v]
        w[prev, prev] = 0.0
        active[last] = False
        for v in range(n):
            if owner[v] == last:
                owner[v] = prev
    return values, masks


def _stoer_wagner_numpy(weights):
    n = weights.shape[0]
    w = weights.astype(np.float64, copy=True)
    owner = np.arange(n)
    active = np.ones(n, dtype=bool)
    nphase = max(n - 1, 0)
    values = np.empty(nphase)
    masks = np.zeros((nphase, n), dtype=bool)
    for ph in range(nphase):
        added = np.zeros(n, dtype=bool)
        key = np.zeros(n)
        prev = last = -1
        best = 0.0
        for _ in range(n - ph):
            cand = np.where(active & ~added, key, -np.inf)
            sel = int(cand.argmax())
            best = float(cand[sel])
            added[sel] = True
            prev, last = last, sel
            open_ = active & ~added
            key[open_] += w[sel, open_]
        values[ph] = best
        masks[ph] = owner == last
        w[prev, :] += w[last, :]
        w[:, prev] = w[prev, :]
        w[prev, prev] = 0.0
        active[last] = False
        owner[owner == last] = prev
    return values, masks


# ---------------------------------------------------------------------------
# Dense tableau simplex (minimisation). The last row holds reduced costs and
# minus the objective; the last column holds the right-hand side.
# Entering column: most negative reduced cost (Dantzig) until STALL_LIMIT
# consecutive non-improving pivots, then Bland's rule until progress resumes.
# Leaving row: minimum ratio, ties to the smallest basic column index.
# Status codes: 0 optimal, 1 unbounded, 2 iteration limit.

STALL_LIMIT = 50


@njit
def _simplex_numba(t, basis, allowed, max_iter, tol):
    m = t.shape[0] - 1
    ncol = t.shape[1] - 1
    it = 0
    stall = 0
    last_obj = -t[m, ncol]
    while it < max_iter:
        c = -1
        if stall < STALL_LIMIT:
            best = -tol
            for j in range(ncol):
                if allowed[j] and t[m, j] < best:
                    best = t[m, j]
                    c = j
        else:
            for j in range(ncol):
                if allowed[j] and t[m, j] < -tol:
                    c = j
                    break
        if c < 0:
            return 0, it
        rmin = np.inf
        for i in range(m):
            if t[i, c] > tol:
                ratio = t[i, ncol] / t[i, c]
                if ratio < rmin:
                    rmin = ratio
        if rmin == np.inf:
            return 1, it
        r = -1
        for i in range(m):
            if t[i, c] > tol:
                ratio = t[i, ncol] / t[i, c]
                if ratio <= rmin + 1e-12 and (r < 0 or basis[i] < basis[r]):
                    r = i
        piv = t[r, c]
        for j in range(ncol + 1):
            t[r, j] /= piv
        for i in range(m + 1):
            if i != r:
                f = t[i, c]
                if f != 0.0:
                    for j in range(ncol + 1):
                        t[i, j] -= f * t[r, j]
        basis[r] = c
        it += 1
        obj = -t[m, ncol]
        if obj < last_obj - 1e-12:
            stall = 0
            last_obj = obj
        else:
            stall += 1
    return 2, it


def _simplex_numpy(t, basis, allowed, max_iter, tol):
    m = t.shape[0] - 1
    ncol = t.shape[1] - 1
    it = 0
    stall = 0
    last_obj = -t[m, ncol]
    while it < max_iter:
        red = np.where(allowed, t[m, :ncol], np.inf)
        if stall < STALL_LIMIT:
            c = int(red.argmin())
            if not red[c] < -tol:
                return 0, it
        else:
            neg = np.flatnonzero(red < -tol)
            if neg.size == 0:
                return 0, it
            c = int(neg[0])
        col = t[:m, c]
        pos = col > tol
        if not pos.any():
            return 1, it
        ratios = np.full(m, np.inf)
        ratios[pos] = t[:m, ncol][pos] / col[pos]
        rmin = ratios.min()
        ties = np.flatnonzero(pos & (ratios <= rmin + 1e-12))
        r = int(ties[np.argmin(basis[ties])])
        t[r] /= t[r, c]
        f = t[:, c].copy()
        f[r] = 0.0
        t -= np.outer(f, t[r])
        basis[r] = c
        it += 1
        obj = -t[m, ncol]
        if obj < last_obj - 1e-12:
            stall = 0
            last_obj = obj
        else:
            stall += 1
    return 2, it


# ---------------------------------------------------------------------------
# dispatch

if USE_NUMBA:
    all_pairs_bfs = _all_pairs_bfs_numba
    held_karp_table = _held_karp_numba
    stoer_wagner_phases = _stoer_wagner_numba
    simplex_run = _simplex_numba
else:
    all_pairs_bfs = _all_pairs_bfs_numpy
    held_karp_table = _held_karp_numpy
    stoer_wagner_phases = _stoer_wagner_numpy
    simplex_run = _simplex_numpy

BACKEND = "numba" if USE_NUMBA else "numpy"

FLAVOURS = {
    "all_pairs_bfs": (_all_pairs_bfs_numba, _all_pairs_bfs_numpy),
    "held_karp_table": (_held_karp_numba, _held_karp_numpy),
    "stoer_wagner_phases": (_stoer_wagner_numba, _stoer_wagner_numpy),
    "simplex_run": (_simplex_numba, _simplex_numpy),
}
