#!/usr/bin/env python3
"""demo_divergence.py: the growth sequence loses along an aligned point.

A witness x0 is constructed inside nested covers so that c_n * f(n x0) keeps
exceeding sqrt(c_n). The exact test is c_n * f^2 >= 1 on every aligned n.

Usage:
  python demos/demo_divergence.py
"""

import sys
from fractions import Fraction

from extremal.harness import ExperimentConfig, divergence_experiment

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    table = divergence_experiment(ExperimentConfig(n_max=16))
    print(f"== witness x0 ~ {float(table.x0):.15f} ==")
    print(f"  {'n':>3} {'c_n':>10} {'c_n*f':>12}  aligned")
    for r in table.rows:
        print(f"  {r.n:>3} {float(r.c_n):>10.5f} {float(r.c_n * r.f_E[0]):>12.6f}  {r.aligned}")
    aligned = [r for r in table.rows if r.aligned]
    gate("every aligned n certified", all(r.certified for r in aligned), f"{len(aligned)} aligned")
    prods = [r.c_n * r.f_E[0] for r in aligned]
    gate("c_n f(n x0) grows", prods[-1] > prods[0], f"{float(prods[0]):.3f} -> {float(prods[-1]):.3f}")

    print("== a point off the sets ==")
    quiet = divergence_experiment(ExperimentConfig(n_max=16, x0=Fraction(1, 4)))
    gate("x0 = 1/4 is never aligned", not any(r.aligned for r in quiet.rows))

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
