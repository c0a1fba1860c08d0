#!/usr/bin/env python3
"""Solve an SDPA-sparse problem with SDPAP (SDPA; multiprecision when the
installed backend is GMP). Same output protocol as clarabel_sdpa.py.

usage: sdpap_sdpa.py INPUT OUTPUT [--eps 1e-10] [--precision 200]
"""

import argparse
import sys

import numpy as np
import sdpap
from sdpap.sdpacall import sdpacall


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("input")
    ap.add_argument("output")
    ap.add_argument("--eps", type=float, default=1e-10)
    ap.add_argument("--precision", type=int, default=200)
    ap.add_argument("--max-iter", type=int, default=200)
    args = ap.parse_args()

    with open(args.input) as f:
        lines = [ln for ln in f if not ln.startswith(('"', '*'))]
    sizes = [int(t) for t in lines[2].split()]

    A, b, c, K, J = sdpap.importsdpa(args.input)
    opt = {"print": "no", "epsilonStar": args.eps, "epsilonDash": args.eps,
           "maxIteration": args.max_iter, "lowerBound": -1e8, "upperBound": 1e8}
    if sdpacall.get_backend_info().get("gmp"):
        opt["mpfPrecision"] = args.precision
    x, y, sdpapinfo, timeinfo, sdpainfo = sdpap.solve(A, b, c, K, J, opt)
    x = np.asarray(x.todense() if hasattr(x, "todense") else x).ravel()
    cvec = np.asarray(c.todense()).ravel()

    phase = str(sdpainfo.get("phasevalue", sdpapinfo.get("phasevalue", "")))
    status = "OPTIMAL" if phase == "pdOPT" else phase
    dual_obj = -float(cvec @ x)  # c was negated on import
    primal_obj = float(-sdpapinfo.get("dualObj", -dual_obj))

    with open(args.output, "w") as f:
        f.write(f"status: {status}\n")
        f.write(f"primal_objective: {primal_obj:.17e}\n")
        f.write(f"dual_objective: {dual_obj:.17e}\n")
        f.write(f"iterations: {int(sdpainfo.get('iteration', 0))}\n")
        lin = 0
        sdp = int(sum(-s for s in sizes if s < 0))
        for bidx, s in enumerate(sizes):
            if s < 0:
                for i in range(-s):
                    v = x[lin + i]
                    if v != 0.0:
                        f.write(f"Y {bidx + 1} {i + 1} {i + 1} {v:.17e}\n")
                lin += -s
            else:
                for i in range(s):
                    for j in range(i, s):
                        v = x[sdp + i * s + j]
                        if v != 0.0:
                            f.write(f"Y {bidx + 1} {i + 1} {j + 1} {v:.17e}\n")
                sdp += s * s
    print(f"sdpap: {status} obj {dual_obj:.12e}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
