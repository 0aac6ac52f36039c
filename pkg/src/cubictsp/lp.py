"""Two-phase dense simplex for small linear programs.

Solves ``min c.x`` subject to ``A_eq x = b_eq``, ``A_ge x >= b_ge``,
``x >= 0``. Pivoting happens in :func:`cubictsp.kernels.simplex_run`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import BudgetExceededError, PreconditionError

TOL = 1e-9


@dataclass(frozen=True)
class LpResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: np.ndarray | None
    value: float | None
    iterations: int


def solve_lp(c, A_eq=None, b_eq=None, A_ge=None, b_ge=None, max_iter: int = 50_000) -> LpResult:
    c = np.asarray(c, dtype=np.float64)
    nvar = c.size
    blocks = []
    rhs = []
    nslack = 0
    if A_eq is not None and len(A_eq):
        blocks.append(("eq", np.asarray(A_eq, dtype=np.float64).reshape(-1, nvar)))
        rhs.append(np.asarray(b_eq, dtype=np.float64))
    if A_ge is not None and len(A_ge):
        a = np.asarray(A_ge, dtype=np.float64).reshape(-1, nvar)
        blocks.append(("ge", a))
        rhs.append(np.asarray(b_ge, dtype=np.float64))
        nslack = a.shape[0]
    if not blocks:
        if (c < -TOL).any():
            return LpResult("unbounded", None, None, 0)
        return LpResult("optimal", np.zeros(nvar), 0.0, 0)
    A = np.vstack([b for _, b in blocks])
    b = np.concatenate(rhs)
    m = A.shape[0]
    if b.shape[0] != m:
        raise PreconditionError("right-hand side length does not match constraint rows")
    # surplus columns for >= rows
    S = np.zeros((m, nslack))
    if nslack:
        S[m - nslack:, :] = -np.eye(nslack)
    full = np.hstack([A, S])
    neg = b < 0
    full[neg] *= -1
    b = np.where(neg, -b, b)
    ncore = nvar + nslack
    ncol = ncore + m  # one artificial per row
    t = np.zeros((m + 1, ncol + 1))
    t[:m, :ncore] = full
    t[:m, ncore:ncol] = np.eye(m)
    t[:m, ncol] = b
    # phase 1 objective: sum of artificials, expressed in reduced form
    t[m, :ncore] = -full.sum(axis=0)
    t[m, ncol] = -b.sum()
    basis = np.arange(ncore, ncol, dtype=np.int64)
    allowed = np.ones(ncol, dtype=np.bool_)
    status, it1 = kernels.simplex_run(t, basis, allowed, max_iter, TOL)
    if status == 2:
        raise BudgetExceededError(f"simplex phase 1 hit the iteration limit {max_iter}")
    if -t[m, ncol] > 1e-7:
        return LpResult("infeasible", None, None, it1)
    # drive remaining artificials out of the basis, dropping redundant rows
    keep = np.ones(m, dtype=bool)
    for r in range(m):
        if basis[r] < ncore:
            continue
        row = t[r, :ncore]
        cand = np.flatnonzero(np.abs(row) > 1e-7)
        if cand.size == 0:
            keep[r] = False
            continue
        col = int(cand[0])
        t[r] /= t[r, col]
        f = t[:, col].copy()
        f[r] = 0.0
        t -= np.outer(f, t[r])
        basis[r] = col
    rows = np.flatnonzero(keep)
    t2 = np.zeros((rows.size + 1, ncol + 1))
    t2[:-1] = t[rows]
    basis2 = basis[rows].copy()
    cost = np.zeros(ncol)
    cost[:nvar] = c
    t2[-1, :ncol] = cost
    for i, bcol in enumerate(basis2):
        if cost[bcol] != 0.0:
            t2[-1] -= cost[bcol] * t2[i]
    allowed2 = np.zeros(ncol, dtype=np.bool_)
    allowed2[:ncore] = True
    status, it2 = kernels.simplex_run(t2, basis2, allowed2, max_iter, TOL)
    if status == 2:
        raise BudgetExceededError(f"simplex phase 2 hit the iteration limit {max_iter}")
    if status == 1:
        return LpResult("unbounded", None, None, it1 + it2)
    x = np.zeros(ncol)
    x[basis2] = t2[:-1, ncol]
    x = np.clip(x[:nvar], 0.0, None)
    return LpResult("optimal", x, float(c @ x), it1 + it2)
