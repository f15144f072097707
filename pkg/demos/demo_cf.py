#!/usr/bin/env python3
"""demo_cf.py: continued fractions in exact arithmetic.

Walks through expansion, evaluation, negation and truncation of an infinite
stream, then checks each step with a gate that prints PASS or FAIL.

Usage:
  python demos/demo_cf.py
"""

import sys
from fractions import Fraction

from extremal import CFStream, cf_evaluate, cf_from_rational, cf_negate, cf_truncate, convergent_table

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    print("== expansion and evaluation ==")
    for r in (Fraction(3, 4), Fraction(-3, 4), Fraction(355, 113), Fraction(-17, 5)):
        cf = cf_from_rational(r)
        print(f"  {str(r):>8} -> {cf}")
        gate(f"round trip {r}", cf_evaluate(cf) == r)

    print("== negation ==")
    neg = cf_negate(cf_from_rational(Fraction(3, 4)))
    gate("-[0;1,3] == [-1;4]", (neg.a0, neg.elements) == (-1, (4,)), str(neg))

    print("== convergents of the golden ratio ==")
    t = convergent_table(1, [1] * 12)
    print("  " + ", ".join(f"{t.p(i)}/{t.q(i)}" for i in range(8)))
    gate("determinant identity", all(t.p(i - 1) * t.q(i) - t.p(i) * t.q(i - 1) == (-1) ** i
                                     for i in range(13)))

    print("== truncating sqrt(2) = [1; 2, 2, ...] ==")
    s = CFStream.periodic(1, [], [2])
    tr = cf_truncate(s, 10)
    lo, hi = tr.reconstruct()
    print(f"  value enclosed in [{float(lo):.15f}, {float(hi):.15f}]")
    gate("enclosure brackets sqrt(2)", lo * lo < 2 < hi * hi)

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
