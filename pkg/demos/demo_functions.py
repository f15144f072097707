#!/usr/bin/env python3
"""demo_functions.py: evaluating the extremal functions.

Builds the default context (sparse certified covers, logarithmic growth)
and evaluates f_F, f_G and their sum at a handful of points. Gates cover the
global bound, vanishing near the origin and the per-level support budget.

Usage:
  python demos/demo_functions.py
"""

import sys
from fractions import Fraction

from extremal import BuildConfig, FunctionContext, f_total_eval, support_report
from extremal.harness import construct_witness

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    ctx = FunctionContext(BuildConfig())
    bound = ctx.growth.inv_sqrt_bounds(1)[1]
    print(f"== values (sup bound 1/sqrt(c_1) <= {float(bound):.6f}) ==")
    # the witness sits inside nested G covers, so its multiples light up
    w = construct_witness(ctx, "G", 1, 8, 1)
    pts = [Fraction(1, 4), Fraction(-3, 2), w, 3 * w, 8 * w]
    hits = 0
    for x in pts:
        v = f_total_eval(x, ctx)
        hits += bool(v.terms)
        print(f"  x~{float(x):>9.5f}  f_F~{float(v.f_F[0]):.6g}  f_G~{float(v.f_G[0]):.6g}  terms={len(v.terms)}")
        gate(f"0 <= f_E(x) <= 2/sqrt(c_1) at x~{float(x):.5f}", 0 <= v.f_E[0] and v.f_E[1] <= 2 * bound)

    gate("witness multiples are nonzero", hits >= 3, f"{hits} nonzero")

    print("== support per level ==")
    for r in support_report(ctx, 4):
        gate(f"{r.kind} m={r.m}: support <= 2^-{r.m}", r.ok, f"{float(r.bound):.3g}")

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
