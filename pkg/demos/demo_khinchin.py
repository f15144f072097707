#!/usr/bin/env python3
"""demo_khinchin.py: counting good approximations of sqrt(2).

Counts n with |n*alpha - m| < b_n for a divergent rule (1/n) and a convergent
one (1/n^3). Decisions use dyadic enclosures that refine until certain.

Usage:
  python demos/demo_khinchin.py
"""

import sys

from extremal.harness import KhinchinRule, khinchin_count, sqrt2_stream

GATES = []


def gate(name, ok, detail=""):
    GATES.append(ok)
    print(f"  [{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))


def main():
    print("== b_n = 1/n, n <= 1000 ==")
    rows = khinchin_count(sqrt2_stream(), KhinchinRule.preset("inv_n"), 1000)
    hits = [r.n for r in rows if r.hit]
    print(f"  hits: {hits}")
    gate("at least 8 hits", len(hits) >= 8, str(len(hits)))
    gate("Pell denominators present", {2, 5, 12, 29, 70, 169, 408, 985} <= set(hits))

    print("== b_n = 1/n^3, n <= 100000 ==")
    rows = khinchin_count(sqrt2_stream(), KhinchinRule.preset("inv_n3"), 100_000)
    print(f"  final count {rows[-1].cumulative}")
    gate("count flat over the last 90%", rows[-1].cumulative == rows[9_999].cumulative)

    print(f"\n{sum(GATES)}/{len(GATES)} gates passed")
    return 0 if all(GATES) else 1


if __name__ == "__main__":
    sys.exit(main())
