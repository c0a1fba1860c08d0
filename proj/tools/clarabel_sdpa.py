#!/usr/bin/env python3
"""Solve an SDPA-sparse problem with Clarabel (double precision).

The file is read in SDPA dual form, max <F0, Y> s.t. <F_k, Y> = c_k with Y
blockwise PSD (negative block sizes: nonnegative diagonals). Writes labeled
lines and the Y solution to OUTPUT:

    status: OPTIMAL
    primal_objective: ...
    dual_objective: ...      (<F0, Y>)
    iterations: ...
    Y block i j value        (1-based, i <= j)

usage: clarabel_sdpa.py INPUT OUTPUT [--tol 1e-9] [--max-iter 200]
"""

import argparse
import math
import re
import sys

import numpy as np
import scipy.sparse as sp
import clarabel


def read_sdpa(path):
    with open(path) as f:
        lines = [ln for ln in f if not ln.startswith(('"', '*'))]
    toks = re.sub(r"[,{}()]", " ", "".join(lines)).split()
    pos = 0
    m = int(toks[pos]); pos += 1
    nb = int(toks[pos]); pos += 1
    sizes = [int(float(t)) for t in toks[pos:pos + nb]]; pos += nb
    c = np.array([float(t) for t in toks[pos:pos + m]]); pos += m
    rest = toks[pos:]
    if len(rest) % 5:
        raise ValueError("truncated entry list")
    ent = np.array(rest, dtype=object).reshape(-1, 5)
    mat = ent[:, 0].astype(int)
    blk = ent[:, 1].astype(int) - 1
    ii = ent[:, 2].astype(int) - 1
    jj = ent[:, 3].astype(int) - 1
    val = ent[:, 4].astype(float)
    lo = np.minimum(ii, jj)
    hi = np.maximum(ii, jj)
    return m, sizes, c, mat, blk, lo, hi, val


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--tol", type=float, default=1e-9)
    ap.add_argument("--max-iter", type=int, default=400)
    args = ap.parse_args()

    m, sizes, c, mat, blk, lo, hi, val = read_sdpa(args.input)

    # Variable layout: per block, PSD -> upper triangle column-major scaled
    # by sqrt(2) off the diagonal (Clarabel's PSDTriangle), diagonal -> n.
    offsets, nvar, cones = [], 0, []
    for s in sizes:
        offsets.append(nvar)
        n = abs(s)
        nvar += n if s < 0 else n * (n + 1) // 2
    r2 = math.sqrt(2.0)

    def index(b, i, j):
        s = sizes[b]
        if s < 0:
            return offsets[b] + i
        return offsets[b] + j * (j + 1) // 2 + i

    col = np.array([index(b, i, j) for b, i, j in zip(blk, lo, hi)], dtype=np.int64)
    coef = np.where(lo == hi, val, val * r2)

    # Objective: minimize -<F0, Y>.
    q = np.zeros(nvar)
    sel = mat == 0
    np.add.at(q, col[sel], -coef[sel])

    # Equalities <F_k, Y> = c_k (zero cone), then Y in its cones: -x + s = 0.
    sel = mat > 0
    A_eq = sp.csc_matrix((coef[sel], (mat[sel] - 1, col[sel])), shape=(m, nvar))
    A = sp.vstack([A_eq, -sp.identity(nvar, format="csc")], format="csc")
    b = np.concatenate([c, np.zeros(nvar)])
    cones = [clarabel.ZeroConeT(m)] if m else []
    for s in sizes:
        if s < 0:
            cones.append(clarabel.NonnegativeConeT(-s))
        else:
            cones.append(clarabel.PSDTriangleConeT(s))
    P = sp.csc_matrix((nvar, nvar))

    settings = clarabel.DefaultSettings()
    settings.verbose = False
    settings.tol_gap_abs = args.tol
    settings.tol_gap_rel = args.tol
    settings.tol_feas = args.tol
    settings.max_iter = args.max_iter
    sol = clarabel.DefaultSolver(P, q, A, b, cones, settings).solve()

    status = str(sol.status)
    token = {"Solved": "OPTIMAL", "AlmostSolved": "ALMOST_OPTIMAL",
             "PrimalInfeasible": "INFEASIBLE", "DualInfeasible": "UNBOUNDED",
             "AlmostPrimalInfeasible": "INFEASIBLE", "AlmostDualInfeasible": "UNBOUNDED",
             "MaxIterations": "NONCONVERGENCE", "MaxTime": "NONCONVERGENCE",
             "NumericalError": "NUMERICAL_ERROR", "InsufficientProgress": "NONCONVERGENCE"}
    status = token.get(status.split(".")[-1], status)

    x = np.array(sol.x)
    with open(args.output, "w") as f:
        f.write(f"status: {status}\n")
        f.write(f"primal_objective: {-sol.obj_val_dual:.17e}\n")
        f.write(f"dual_objective: {-float(q @ x):.17e}\n")
        f.write(f"iterations: {sol.iterations}\n")
        for bidx, s in enumerate(sizes):
            n = abs(s)
            for j in range(n):
                for i in (range(j, j + 1) if s < 0 else range(j + 1)):
                    v = x[index(bidx, i, j)]
                    if i != j:
                        v /= r2
                    if v != 0.0:
                        f.write(f"Y {bidx + 1} {i + 1} {j + 1} {v:.17e}\n")
    print(f"clarabel: {status} obj {-float(q @ x):.12e} in {sol.iterations} iterations")
    return 0


if __name__ == "__main__":
    sys.exit(main())
