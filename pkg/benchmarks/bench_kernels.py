"""Time each kernel's numba and numpy flavours on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

Prints one line per (kernel, size) with the best-of-N time for both
flavours, the speedup, and whether the outputs agree.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from cubictsp import kernels
from cubictsp._accel import HAVE_NUMBA
from cubictsp.families import random_cubic, three_path


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def same(a, b) -> bool:
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if isinstance(a, np.ndarray):
        return a.shape == b.shape and np.allclose(a, b)
    return a == b


def cases():
    for n in (200, 1000):
        g = random_cubic(n, seed=1)
        indptr, indices = g.csr()
        yield "all_pairs_bfs", n, (indptr, indices, n), False
    for n in (12, 15):
        g = three_path((n + 1) // 3)
        dist = np.ascontiguousarray(g.distance_matrix(), dtype=np.int64)
        yield "held_karp_table", g.n, (dist,), False
    for n in (40, 120):
        rng = np.random.default_rng(n)
        w = rng.random((n, n))
        w = np.triu(w, 1)
        w = w + w.T
        yield "stoer_wagner_phases", n, (w,), False
    for n in (30, 80):
        rng = np.random.default_rng(n)
        m = n // 2
        t = np.zeros((m + 1, n + m + 1))
        t[:m, :n] = rng.random((m, n))
        t[:m, n:n + m] = np.eye(m)
        t[:m, -1] = 1.0
        t[m, :n] = -rng.random(n)
        yield "simplex_run", n, (t, np.arange(n, n + m), np.ones(n + m, dtype=np.bool_), 10_000, 1e-9), True


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; only the numpy flavour can run")
    print(f"{'kernel':22s} {'size':>6s} {'numba_s':>10s} {'numpy_s':>10s} {'speedup':>8s} agree")
    for name, size, inputs, mutates in cases():
        fn_numba, fn_numpy = kernels.FLAVOURS[name]

        def call(fn):
            return lambda: fn(*[x.copy() if mutates and isinstance(x, np.ndarray) else x for x in inputs])

        fn_numba(*[x.copy() if isinstance(x, np.ndarray) else x for x in inputs])  # compile outside timing
        t_nb, out_nb = best_of(call(fn_numba), args.repeat)
        t_np, out_np = best_of(call(fn_numpy), args.repeat)
        print(f"{name:22s} {size:6d} {t_nb:10.5f} {t_np:10.5f} {t_np / t_nb:8.1f} {same(out_nb, out_np)}")


if __name__ == "__main__":
    main()
