#!/usr/bin/env python3
"""demo_sets.py: enumerating the exceptional sets G and F.

G collects expansions that grow faster than a doubly exponential threshold;
F collects expansions dominated by a schedule phi. We enumerate inner
approximations with certified tail bounds and extend them to the real line.

Usage:
  python demos/demo_sets.py
"""

import sys
from fractions import Fraction

from extremal import GFamily, GParams, PhiSchedule, enumerate_F0, enumerate_G0, extend_to_line

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    print("== G inside (0,1), A = 3 ==")
    g1, g2 = enumerate_G0(GParams(3, 1)), enumerate_G0(GParams(3, 2))
    print(f"  k=1: {len(g1.inner)} interval(s), measure {g1.measure}")
    print(f"  k=2: {len(g2.inner)} intervals, measure ~ {float(g2.measure):.6g}")
    gate("|G(k=1)| == 1/21", g1.measure == Fraction(1, 21))
    gate("|G(k=2)| < |G(k=1)|", g2.measure < g1.measure)

    print("== F inside (0,1), phi = 2, cap 3 ==")
    f = enumerate_F0(1, 1, PhiSchedule.constant(2), 3)
    print(f"  inner {f.inner}\n  tail bound {f.tail_bound}")
    gate("tail bound <= 1/4", f.tail_bound <= Fraction(1, 4))

    print("== extension to the line, j in [-6, 6] ==")
    fam = GFamily(3)
    for k in (1, 2, 3, 4):
        ext = extend_to_line(fam, k, (-6, 6))
        gate(f"k={k}: measure + tail < 3*2^-{k}", ext.upper < Fraction(3, 2 ** k),
             f"{float(ext.upper):.4g}")

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
