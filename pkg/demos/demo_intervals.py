#!/usr/bin/env python3
"""demo_intervals.py: cylinders and exact interval-set measure.

The depth-one cylinders tile (0, 1) up to a tail; unions and complements keep
their measure exactly. Every claim is gated.

Usage:
  python demos/demo_intervals.py
"""

import sys
from fractions import Fraction

from extremal import (IntervalSet, convergent_table, fundamental_interval, iset_complement,
                      iset_intersect, iset_union, tail_cylinder)

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    print("== depth-one cylinders ==")
    for a in range(1, 5):
        print(f"  J[0;{a}] = {fundamental_interval(convergent_table(0, [a]))}")
    for N in (1, 10, 100):
        total = sum((fundamental_interval(convergent_table(0, [a])).length
                     for a in range(1, N + 1)), Fraction(0)) + Fraction(1, N + 1)
        gate(f"partition of (0,1) at N={N}", total == 1, str(total))

    print("== tail cylinder ==")
    p = convergent_table(0, [2])
    t = tail_cylinder(p, 5)
    print(f"  next element >= 5 inside J[0;2]: {t}")
    gate("tail sits inside the cylinder", fundamental_interval(p).lo <= t.lo and t.hi <= fundamental_interval(p).hi)

    print("== set algebra ==")
    a = IntervalSet.of((0, Fraction(1, 2)), (Fraction(2, 3), 1))
    b = IntervalSet.of((Fraction(1, 4), Fraction(3, 4)))
    u, i = iset_union(a, b), iset_intersect(a, b)
    print(f"  A u B = {u}\n  A n B = {i}")
    gate("|A u B| + |A n B| == |A| + |B|", u.measure + i.measure == a.measure + b.measure)
    gate("complement measure", iset_complement(a, 0, 1).measure == 1 - a.measure)
    gate("JSON round trip", IntervalSet.from_json(u.to_json()) == u)

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
