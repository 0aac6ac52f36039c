"""The numba and numpy flavours of every kernel must agree exactly."""

import itertools
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubictsp import kernels
from cubictsp._accel import HAVE_NUMBA
from cubictsp.families import random_bridged, random_cubic, three_path

pytestmark = pytest.mark.skipif(not HAVE_NUMBA, reason="numba not installed")

bfs_nb, bfs_np = kernels.FLAVOURS["all_pairs_bfs"]
hk_nb, hk_np = kernels.FLAVOURS["held_karp_table"]
sw_nb, sw_np = kernels.FLAVOURS["stoer_wagner_phases"]
sx_nb, sx_np = kernels.FLAVOURS["simplex_run"]


@given(st.integers(0, 10_000), st.sampled_from([4, 10, 30]))
def test_bfs_parity(seed, n):
    g = random_cubic(n, seed=seed)
    indptr, indices = g.csr()
    assert np.array_equal(bfs_nb(indptr, indices, n), bfs_np(indptr, indices, n))


def test_bfs_unreachable_marked():
    indptr = np.array([0, 1, 2, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int64)
    for fn in (bfs_nb, bfs_np):
        d = fn(indptr, indices, 3)
        assert d[0, 2] == -1 and d[2, 2] == 0 and d[0, 1] == 1


def brute_force_tsp(dist):
    n = dist.shape[0]
    best = None
    for perm in itertools.permutations(range(1, n)):
        order = (0,) + perm
        val = sum(dist[order[i], order[(i + 1) % n]] for i in range(n))
        best = val if best is None else min(best, val)
    return best


@pytest.mark.parametrize("seed", range(6))
def test_held_karp_parity_and_brute_force(seed):
    g = random_bridged(3, seed=seed)
    if g.n > 8:
        g = three_path(3)
    dist = np.ascontiguousarray(g.distance_matrix(), dtype=np.int64)
    a = hk_nb(dist)
    b = hk_np(dist)
    assert a[0] == b[0] and a[1] == b[1]
    assert np.array_equal(a[2], b[2])
    assert a[0] == brute_force_tsp(dist)


@given(st.integers(0, 10_000), st.integers(3, 14))
def test_stoer_wagner_parity(seed, n):
    rng = np.random.default_rng(seed)
    w = np.triu(rng.integers(0, 3, (n, n)).astype(float), 1)
    w = w + w.T
    va, ma = sw_nb(w)
    vb, mb = sw_np(w)
    assert np.allclose(va, vb) and np.array_equal(ma, mb)


def brute_min_cut(w):
    n = w.shape[0]
    best = np.inf
    for r in range(1, n):
        for side in itertools.combinations(range(n), r):
            mask = np.zeros(n, bool)
            mask[list(side)] = True
            best = min(best, w[mask][:, ~mask].sum())
    return best


@pytest.mark.parametrize("seed", range(10))
def test_stoer_wagner_minimum_is_global_min_cut(seed):
    rng = np.random.default_rng(seed)
    n = 7
    w = np.triu(rng.random((n, n)), 1)
    w = w + w.T
    values, masks = kernels.stoer_wagner_phases(w)
    i = int(values.argmin())
    assert values[i] == pytest.approx(brute_min_cut(w))
    assert w[masks[i]][:, ~masks[i]].sum() == pytest.approx(values[i])


@given(st.integers(0, 10_000))
def test_simplex_parity(seed):
    rng = np.random.default_rng(seed)
    n, m = 8, 4
    t = np.zeros((m + 1, n + m + 1))
    t[:m, :n] = rng.random((m, n))
    t[:m, n:n + m] = np.eye(m)
    t[:m, -1] = rng.random(m) + 0.1
    t[m, :n] = -rng.random(n)
    basis_a = np.arange(n, n + m)
    basis_b = basis_a.copy()
    allowed = np.ones(n + m, dtype=np.bool_)
    ta, tb = t.copy(), t.copy()
    ra = sx_nb(ta, basis_a, allowed, 1000, 1e-9)
    rb = sx_np(tb, basis_b, allowed, 1000, 1e-9)
    assert tuple(ra) == tuple(rb)
    assert np.array_equal(basis_a, basis_b)
    assert np.allclose(ta, tb)


def test_env_flag_selects_numpy_backend():
    code = "from cubictsp import kernels; print(kernels.BACKEND)"
    env = dict(os.environ, CUBICTSP_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["CUBICTSP_DISABLE_NUMBA"] = "0"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"


def test_pipeline_identical_under_both_backends():
    code = (
        "from cubictsp.families import random_cubic; from cubictsp.ms import solve_ms;"
        "from cubictsp.bounds import held_karp_opt, ser_value; from cubictsp.families import three_path;"
        "r = solve_ms(random_cubic(60, seed=3)); g = three_path(4);"
        "print(r.h_edges, r.tour.order, held_karp_opt(g), round(ser_value(g).value, 9))"
    )
    outs = []
    for flag in ("0", "1"):
        env = dict(os.environ, CUBICTSP_DISABLE_NUMBA=flag)
        outs.append(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                                   check=True).stdout)
    assert outs[0] == outs[1]
