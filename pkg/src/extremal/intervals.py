"""Finite unions of open intervals with exact rational endpoints.

Shared endpoints are merged away by normalization: they form a finite,
measure-zero set, and merging keeps every union in its minimal form.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .cf import ConvergentTable


@dataclass(frozen=True, order=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def contains_closed(self, other: "RatInterval") -> bool:
        """True if the closure of ``other`` lies inside this open interval."""
        return self.lo < other.lo and other.hi < self.hi

    def __str__(self):
        return f"({self.lo}, {self.hi})"


class IntervalSet:
    """Sorted, pairwise disjoint, non-touching open intervals."""

    __slots__ = ("intervals", "_los")

    def __init__(self, intervals: Sequence[RatInterval] = ()):
        self.intervals: tuple[RatInterval, ...] = tuple(intervals)
        self._los = None

    @classmethod
    def of(cls, *pairs) -> "IntervalSet":
        return iset_normalize([RatInterval(lo, hi) for lo, hi in pairs])

    def __len__(self):
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __eq__(self, other):
        return isinstance(other, IntervalSet) and self.intervals == other.intervals

    def __hash__(self):
        return hash(self.intervals)

    def __repr__(self):
        return "IntervalSet{" + ", ".join(map(str, self.intervals)) + "}"

    @property
    def measure(self) -> Fraction:
        return iset_measure(self)

    def locate(self, x) -> RatInterval | None:
        """The interval containing ``x``, if any."""
        if self._los is None:
            self._los = [iv.lo for iv in self.intervals]
        i = bisect_right(self._los, x) - 1
        if i >= 0 and x in self.intervals[i]:
            return self.intervals[i]
        return None

    def __contains__(self, x) -> bool:
        return self.locate(x) is not None

    def hull(self) -> RatInterval | None:
        if not self.intervals:
            return None
        return RatInterval(self.intervals[0].lo, self.intervals[-1].hi)

    def to_json(self) -> str:
        return json.dumps(iset_to_quads(self))

    @classmethod
    def from_json(cls, text: str) -> "IntervalSet":
        return iset_from_quads(json.loads(text))


def fundamental_interval(prefix: ConvergentTable) -> RatInterval:
    """Open cylinder of all ``x`` in (0, 1) whose expansion starts with the prefix."""
    if prefix.a0 != 0:
        raise ValueError("fundamental intervals are defined inside (0, 1): a0 must be 0")
    pn, qn, pm, qm = prefix.last_two()
    return cylinder_from_rows(pn, qn, pm, qm)


def cylinder_from_rows(pn: int, qn: int, pm: int, qm: int) -> RatInterval:
    a, b = Fraction(pn, qn), Fraction(pn + pm, qn + qm)
    return RatInterval(a, b) if a < b else RatInterval(b, a)


def tail_cylinder(prefix: ConvergentTable, n: int) -> RatInterval:
    """Points of the prefix cylinder whose next element is at least ``n``."""
    if n < 1:
        raise ValueError("N must be >= 1")
    pn, qn, pm, qm = prefix.last_two()
    return tail_from_rows(pn, qn, pm, qm, n)


def tail_from_rows(pn: int, qn: int, pm: int, qm: int, n: int) -> RatInterval:
    a, b = Fraction(pn, qn), Fraction(n * pn + pm, n * qn + qm)
    return RatInterval(a, b) if a < b else RatInterval(b, a)


def iset_normalize(raw: Iterable[RatInterval]) -> IntervalSet:
    items = sorted(raw)
    out: list[RatInterval] = []
    lo = hi = None
    for iv in items:
        if not iv.lo < iv.hi:
            raise ValueError(f"empty interval {iv}")
        if hi is None:
            lo, hi = iv.lo, iv.hi
        elif iv.lo <= hi:
            if iv.hi > hi:
                hi = iv.hi
        else:
            out.append(RatInterval(lo, hi))
            lo, hi = iv.lo, iv.hi
    if hi is not None:
        out.append(RatInterval(lo, hi))
    return IntervalSet(out)


def iset_measure(s: IntervalSet) -> Fraction:
    return sum((iv.hi - iv.lo for iv in s.intervals), Fraction(0))


def iset_affine(s: IntervalSet, shift: int = 0, scale=1) -> IntervalSet:
    scale = Fraction(scale)
    if scale <= 0:
        raise ValueError("scale must be positive")
    return IntervalSet([RatInterval(scale * iv.lo + shift, scale * iv.hi + shift)
                        for iv in s.intervals])


def iset_union(*sets: IntervalSet) -> IntervalSet:
    return iset_normalize(iv for s in sets for iv in s.intervals)


def iset_intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    i = j = 0
    A, B = a.intervals, b.intervals
    while i < len(A) and j < len(B):
        lo = max(A[i].lo, B[j].lo)
        hi = min(A[i].hi, B[j].hi)
        if lo < hi:
            out.append(RatInterval(lo, hi))
        if A[i].hi < B[j].hi:
            i += 1
        else:
            j += 1
    return IntervalSet(out)


def iset_complement(s: IntervalSet, lo, hi) -> IntervalSet:
    """Open intervals of ``(lo, hi)`` not covered by ``s`` (endpoints of ``s`` dropped)."""
    out = []
    cur = Fraction(lo)
    for iv in s.intervals:
        if iv.hi <= cur:
            continue
        if iv.lo >= hi:
            break
        if iv.lo > cur:
            out.append(RatInterval(cur, iv.lo))
        cur = max(cur, iv.hi)
    if cur < hi:
        out.append(RatInterval(cur, hi))
    return IntervalSet(out)


def iset_to_quads(s: IntervalSet) -> list[list[int]]:
    return [[iv.lo.numerator, iv.lo.denominator, iv.hi.numerator, iv.hi.denominator]
            for iv in s.intervals]


def iset_from_quads(quads) -> IntervalSet:
    return iset_normalize(RatInterval(Fraction(a, b), Fraction(c, d)) for a, b, c, d in quads)
