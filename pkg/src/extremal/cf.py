"""Exact continued-fraction arithmetic.

Elements after ``a0`` are positive integers.  A full representation is kept in
canonical form (last element > 1); prefixes used to index cylinders are not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

RULE_INDEX_CAP = 10**6
DEFAULT_PRECISION_BITS = 128


@dataclass(frozen=True)
class ContinuedFraction:
    """Terminating continued fraction ``[a0; a1, ..., an]`` in canonical form."""

    a0: int
    elements: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(int(a) for a in self.elements))
        if any(a < 1 for a in self.elements):
            raise ValueError(f"elements must be >= 1, got {self.elements}")
        if self.elements and self.elements[-1] == 1:
            raise ValueError("non-canonical: last element is 1")

    def __len__(self):
        return len(self.elements)

    def __str__(self):
        return f"[{self.a0}; {', '.join(map(str, self.elements))}]"

    @property
    def value(self) -> Fraction:
        return cf_evaluate(self)


@dataclass(frozen=True)
class ConvergentTable:
    """Rows ``(p_i, q_i)`` for ``i = -1, 0, ..., n``.

    ``rows[0]`` is the ``i = -1`` row; use :meth:`p` and :meth:`q` for
    the usual indexing.
    """

    a0: int
    elements: tuple[int, ...]
    rows: tuple[tuple[int, int], ...]

    @property
    def depth(self) -> int:
        return len(self.elements)

    def p(self, i: int) -> int:
        return self.rows[i + 1][0]

    def q(self, i: int) -> int:
        return self.rows[i + 1][1]

    def convergent(self, i: int) -> Fraction:
        return Fraction(self.p(i), self.q(i))

    def last_two(self) -> tuple[int, int, int, int]:
        """``(p_n, q_n, p_{n-1}, q_{n-1})`` for the deepest row."""
        (pm, qm), (pn, qn) = self.rows[-2], self.rows[-1]
        return pn, qn, pm, qm

    def extend(self, a: int) -> "ConvergentTable":
        if a < 1:
            raise ValueError(f"element must be >= 1, got {a}")
        pn, qn, pm, qm = self.last_two()
        return ConvergentTable(self.a0, self.elements + (a,),
                               self.rows + ((a * pn + pm, a * qn + qm),))


def convergent_table(a0: int, elements: Iterable[int] = ()) -> ConvergentTable:
    elements = tuple(int(a) for a in elements)
    if any(a < 1 for a in elements):
        raise ValueError(f"elements must be >= 1, got {elements}")
    rows = [(1, 0), (a0, 1)]
    for a in elements:
        (pm, qm), (pn, qn) = rows[-2], rows[-1]
        rows.append((a * pn + pm, a * qn + qm))
    return ConvergentTable(a0, elements, tuple(rows))


def cf_from_rational(r) -> ContinuedFraction:
    r = Fraction(r)
    p, q = r.numerator, r.denominator
    a0, p = divmod(p, q)
    elements = []
    while p:
        q, p = p, q
        a, p = divmod(p, q)
        elements.append(a)
    # Euclid never ends on 1 for q > 1; guard anyway
    if elements and elements[-1] == 1:
        elements.pop()
        if elements:
            elements[-1] += 1
        else:
            a0 += 1
    return ContinuedFraction(a0, tuple(elements))


def cf_evaluate(cf: ContinuedFraction) -> Fraction:
    table = convergent_table(cf.a0, cf.elements)
    return table.convergent(table.depth)


def cf_negate(cf) -> ContinuedFraction:
    """Negate by the rational path: evaluate, negate, re-expand."""
    if isinstance(cf, CFStream):
        if cf.length is None:
            raise ValueError("negation is only defined for terminating continued fractions")
        cf = cf.as_continued_fraction()
    return cf_from_rational(-cf_evaluate(cf))


@dataclass(frozen=True)
class CFStream:
    """Element source for a finite, eventually periodic or rule-defined expansion.

    ``element(i)`` returns ``a_i`` for ``i >= 1`` and ``a0`` for ``i = 0``; it
    raises :class:`IndexError` past the end of a terminating stream.
    """

    a0: int
    kind: str
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()
    rule: Callable[[int], int] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in ("terminating", "periodic", "rule"):
            raise ValueError(f"unknown stream kind {self.kind!r}")
        if self.kind == "periodic" and not self.period:
            raise ValueError("periodic stream needs a nonempty period")
        if any(a < 1 for a in self.preperiod + self.period):
            raise ValueError("stream elements must be >= 1")
        if self.kind == "rule" and self.rule is None:
            raise ValueError("rule stream needs a rule")

    @classmethod
    def terminating(cls, cf: ContinuedFraction | Sequence[int], a0: int | None = None) -> "CFStream":
        if isinstance(cf, ContinuedFraction):
            return cls(cf.a0, "terminating", cf.elements)
        return cls(0 if a0 is None else a0, "terminating", tuple(cf))

    @classmethod
    def periodic(cls, a0: int, preperiod: Sequence[int], period: Sequence[int]) -> "CFStream":
        return cls(a0, "periodic", tuple(preperiod), tuple(period))

    @classmethod
    def from_rule(cls, a0: int, rule: Callable[[int], int]) -> "CFStream":
        return cls(a0, "rule", rule=rule)

    @property
    def length(self) -> int | None:
        return len(self.preperiod) if self.kind == "terminating" else None

    def element(self, i: int) -> int:
        if i == 0:
            return self.a0
        if i < 0:
            raise IndexError(i)
        if self.kind == "terminating":
            if i > len(self.preperiod):
                raise IndexError(f"stream terminates at index {len(self.preperiod)}")
            return self.preperiod[i - 1]
        if self.kind == "periodic":
            n = len(self.preperiod)
            if i <= n:
                return self.preperiod[i - 1]
            return self.period[(i - n - 1) % len(self.period)]
        if i > RULE_INDEX_CAP:
            raise IndexError(f"rule streams are capped at index {RULE_INDEX_CAP}")
        a = int(self.rule(i))
        if a < 1:
            raise ValueError(f"rule produced element {a} at index {i}")
        return a

    def prefix(self, n: int) -> tuple[int, ...]:
        """Elements ``a_1 .. a_n`` (fewer if the stream terminates first)."""
        if self.length is not None:
            n = min(n, self.length)
        return tuple(self.element(i) for i in range(1, n + 1))

    def tail(self, i: int) -> "CFStream":
        """Stream ``[a_{i+1}; a_{i+2}, ...]``."""
        head = self.element(i + 1)
        if self.kind == "terminating":
            return CFStream(head, "terminating", self.preperiod[i + 1:])
        if self.kind == "periodic":
            n = len(self.preperiod)
            if i + 1 < n:
                return CFStream(head, "periodic", self.preperiod[i + 1:], self.period)
            shift = (i + 1 - n) % len(self.period)
            return CFStream(head, "periodic", (), self.period[shift:] + self.period[:shift])
        rule = self.rule
        return CFStream(head, "rule", rule=lambda j, _r=rule, _i=i: _r(j + _i + 1))

    def as_continued_fraction(self) -> ContinuedFraction:
        if self.length is None:
            raise ValueError("stream does not terminate")
        return cf_from_rational(cf_evaluate_elements(self.a0, self.preperiod))

    def bounds(self, bits: int = DEFAULT_PRECISION_BITS) -> tuple[Fraction, Fraction]:
        """Rational enclosure ``lo <= value <= hi`` with ``hi - lo <= 2**-bits``.

        Exact (``lo == hi``) for terminating streams.
        """
        if self.length is not None:
            v = cf_evaluate_elements(self.a0, self.preperiod)
            return v, v
        target = 1 << bits
        pm, qm, pn, qn = 1, 0, self.a0, 1
        i = 1
        while True:
            a = self.element(i)
            pm, qm, pn, qn = pn, qn, a * pn + pm, a * qn + qm
            i += 1
            if qm * qn >= target:
                break
        lo, hi = sorted((Fraction(pm, qm), Fraction(pn, qn)))
        return lo, hi


def cf_evaluate_elements(a0: int, elements: Sequence[int]) -> Fraction:
    """Value of ``[a0; elements]`` without the canonical-form requirement."""
    pm, qm, pn, qn = 1, 0, a0, 1
    for a in elements:
        pm, qm, pn, qn = pn, qn, a * pn + pm, a * qn + qm
    return Fraction(pn, qn)


@dataclass(frozen=True)
class Truncation:
    """``alpha = [a0; a1, ..., a_i, r_i]``.

    For a terminating tail ``remainder`` is exact and ``error`` is 0; otherwise
    the true remainder lies in ``[remainder - error, remainder + error]``.
    """

    a0: int
    prefix: tuple[int, ...]
    remainder: Fraction
    error: Fraction = Fraction(0)

    @property
    def exact(self) -> bool:
        return self.error == 0

    @property
    def index(self) -> int:
        return len(self.prefix)

    def remainder_bounds(self) -> tuple[Fraction, Fraction]:
        return self.remainder - self.error, self.remainder + self.error

    def reconstruct(self) -> tuple[Fraction, Fraction]:
        """Enclosure of ``(r p_i + p_{i-1}) / (r q_i + q_{i-1})`` over the remainder bounds."""
        table = convergent_table(self.a0, self.prefix)
        pn, qn, pm, qm = table.last_two()
        vals = [(r * pn + pm) / (r * qn + qm) for r in self.remainder_bounds()]
        return min(vals), max(vals)


def cf_truncate(stream: CFStream, i: int, bits: int = DEFAULT_PRECISION_BITS) -> Truncation:
    if i < 0:
        raise ValueError("truncation index must be >= 0")
    if stream.length is not None and stream.length <= i:
        raise IndexError(f"stream terminates at index {stream.length}; r_{i} is undefined")
    prefix = stream.prefix(i)
    lo, hi = stream.tail(i).bounds(bits)
    mid = (lo + hi) / 2
    return Truncation(stream.a0, prefix, mid, hi - mid)
