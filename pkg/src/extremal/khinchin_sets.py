"""The constraint sets F0(m, k) and G0(k) inside (0, 1) and their whole-line extensions.

Every set is an :class:`EnumeratedSet`: an exact inner approximation plus a
rational bound on the measure left out, so the true measure always lies in
``[measure, measure + tail_bound]``.

Two ways of producing one:

* exhaustive enumeration (``enumerate_F0``, ``enumerate_G0``): the inner set is
  the full prefix-tree union (up to the free-element cap for F);
* sparse certification (``sparse_F0``, ``sparse_G0``): the inner set is a single
  cylinder along a witness path and the tail is a certified bound on the
  measure of the whole set.  Used at depths where enumeration is hopeless.

The sparse bounds come from the conditional law of the next element inside a
cylinder with ``s = q_{i-1}/q_i``: ``P(a >= N) = (1 + s)/(N + s)``, which lies in
``[1/N, 2/(N + 1)]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil
from typing import Callable, Iterable, Sequence

import numpy as np

from .cf import CFStream
from .certified import (
    exp_bounds,
    floor_exp_ratio,
    gamma_tail_upper,
    ln_bounds,
    sign_certified,
    _to_iv,
)
from .intervals import (
    IntervalSet,
    RatInterval,
    cylinder_from_rows,
    iset_affine,
    iset_normalize,
    iset_to_quads,
    tail_from_rows,
)
from mpmath import iv


class BudgetExhausted(RuntimeError):
    """An enumeration or search ran past its configured budget."""


# ---------------------------------------------------------------------------
# parameters


@dataclass(frozen=True)
class PhiSchedule:
    """Nondecreasing bound sequence ``phi(i) > 1`` for the element constraint."""

    name: str
    rule: Callable[[int], Fraction] = field(compare=False)

    def __call__(self, i: int) -> Fraction:
        return Fraction(self.rule(i))

    def limit(self, i: int) -> int:
        """Largest integer element allowed at position ``i``: ``a_i < phi(i)``."""
        return ceil(self(i)) - 1

    def check(self, lo: int, hi: int) -> None:
        prev = None
        for i in range(lo, hi + 1):
            v = self(i)
            if v <= 1:
                raise ValueError(f"phi({i}) = {v} must exceed 1")
            if prev is not None and v < prev:
                raise ValueError(f"phi must be nondecreasing: phi({i}) = {v} < {prev}")
            prev = v

    @classmethod
    def linear(cls) -> "PhiSchedule":
        return cls("linear", lambda i: Fraction(i + 1))

    @classmethod
    def constant(cls, c) -> "PhiSchedule":
        c = Fraction(c)
        return cls(f"const{c}", lambda i: c)

    @classmethod
    def from_table(cls, values: Sequence) -> "PhiSchedule":
        """``phi(i) = values[i-1]``, held at the last value beyond the table."""
        vals = [Fraction(v) for v in values]
        if not vals:
            raise ValueError("empty phi table")
        return cls("table", lambda i: vals[min(i, len(vals)) - 1])

    @classmethod
    def preset(cls, spec: str) -> "PhiSchedule":
        if spec == "linear":
            return cls.linear()
        if spec.startswith("const"):
            return cls.constant(Fraction(spec[5:] or 2))
        raise ValueError(f"unknown phi preset {spec!r}")


def validate_A(A) -> bool:
    """Decide ``A - ln A - ln 2 - 1 > 0`` with certified interval arithmetic."""
    A = Fraction(A)
    if A <= 0:
        raise ValueError("A must be positive")
    return sign_certified(lambda: _to_iv(A) - iv.log(_to_iv(A)) - iv.log(2) - 1) > 0


@dataclass(frozen=True)
class GParams:
    A: Fraction
    k: int

    def __post_init__(self):
        object.__setattr__(self, "A", Fraction(self.A))
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not validate_A(self.A):
            raise ValueError(f"A = {self.A} fails A - ln A - ln 2 - 1 > 0")


# ---------------------------------------------------------------------------
# enumerated sets


@dataclass(frozen=True)
class EnumeratedSet:
    inner: IntervalSet
    tail_bound: Fraction
    params_echo: dict = field(default_factory=dict, compare=False)

    @property
    def measure(self) -> Fraction:
        return self.inner.measure

    @property
    def upper(self) -> Fraction:
        """Certified upper bound on the true measure."""
        return self.measure + self.tail_bound

    def to_dict(self) -> dict:
        echo = dict(self.params_echo)
        return {
            "constraints": {k: v for k, v in echo.items() if k != "cap"},
            "cap": echo.get("cap"),
            "inner_intervals": iset_to_quads(self.inner),
            "measure": _ratstr(self.measure),
            "tail_bound": _ratstr(self.tail_bound),
        }


def _ratstr(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def enumerate_F0(m: int, k: int, phi: PhiSchedule, cap: int,
                 max_cylinders: int | None = None, weighted_tail: bool = False) -> EnumeratedSet:
    """Inner union of depth-(m+k) cylinders with ``a_1..a_m <= cap`` and (E1).

    Free positions beyond the cap are accounted for by their tail cylinders.
    With ``weighted_tail`` each tail cylinder is scaled by the constraint factor
    ``prod (1 - 1/ceil(phi))``, which still bounds the part of F0 inside it.
    """
    if m < 1 or k < 1:
        raise ValueError("m and k must be >= 1")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    phi.check(m + 1, m + k)
    limits = [phi.limit(m + i) for i in range(1, k + 1)]
    echo = {"set": "F0", "m": m, "k": k, "phi": phi.name, "cap": cap}
    count = cap ** m
    for L in limits[:-1]:
        count *= L
    if max_cylinders is not None and count > max_cylinders:
        raise BudgetExhausted(f"F0(m={m}, k={k}) needs {count} cylinders > {max_cylinders}")
    inner: list[RatInterval] = []
    tail = Fraction(0)

    def constrained(pn, qn, pm, qm, depth):
        L = limits[depth]
        if depth == k - 1:
            # union over a = 1..L of the child cylinders is one interval
            inner.append(RatInterval(*sorted((Fraction(pn + pm, qn + qm),
                                              Fraction((L + 1) * pn + pm, (L + 1) * qn + qm)))))
            return
        for a in range(1, L + 1):
            constrained(a * pn + pm, a * qn + qm, pn, qn, depth + 1)

    def free(pn, qn, pm, qm, depth):
        nonlocal tail
        if depth == m:
            constrained(pn, qn, pm, qm, 0)
            return
        tail += tail_from_rows(pn, qn, pm, qm, cap + 1).length
        for a in range(1, cap + 1):
            free(a * pn + pm, a * qn + qm, pn, qn, depth + 1)

    free(0, 1, 1, 0, 0)
    if weighted_tail:
        tail *= f0_measure_bound(m, k, phi)
    return EnumeratedSet(iset_normalize(inner), tail, echo)


class _ExpThreshold:
    """``floor(exp(A k) / P)`` for many integers ``P`` from one cached enclosure."""

    def __init__(self, exponent: Fraction):
        self.exponent = exponent
        bits = int(exponent * 3 / 2) + 96
        self.lo, self.hi = exp_bounds(exponent, bits)

    def floor_div(self, P: int) -> int:
        a, b = self.lo // P, self.hi // P
        if a == b:
            return int(a)
        return floor_exp_ratio(self.exponent, P)


def enumerate_G0(params: GParams, node_budget: int | None = None) -> EnumeratedSet:
    """Exact G0(k): all of (0, 1) with ``a_1 ... a_k >= exp(A k)``.

    Walks the tree of prefixes whose product is still below the threshold.  At
    each such node the next elements large enough to clear the threshold form
    one tail cylinder, which lies entirely in the set.  The nodes walked are
    exactly the complement prefixes, so the result is exhaustive and
    ``tail_bound`` is 0.
    """
    A, k = params.A, params.k
    thr = _ExpThreshold(A * k)
    inner: list[RatInterval] = []
    nodes = 0
    stack = [(0, 1, 1, 0, 1, 0)]  # pn, qn, pm, qm, product, depth
    while stack:
        pn, qn, pm, qm, P, depth = stack.pop()
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExhausted(f"G0(k={k}) exceeds {node_budget} prefix nodes")
        N = thr.floor_div(P) + 1
        inner.append(tail_from_rows(pn, qn, pm, qm, N))
        if depth + 1 < k:
            if node_budget is not None and nodes + len(stack) + N - 1 > node_budget:
                raise BudgetExhausted(f"G0(k={k}) exceeds {node_budget} prefix nodes")
            for a in range(1, N):
                stack.append((a * pn + pm, a * qn + qm, pn, qn, P * a, depth + 1))
    echo = {"set": "G0", "A": _ratstr(A), "k": k, "mode": "exact", "nodes": nodes}
    return EnumeratedSet(iset_normalize(inner), Fraction(0), echo)


def g0_complement(params: GParams) -> IntervalSet:
    """Union of the depth-k cylinders with ``a_1 ... a_k < exp(A k)`` (brute force)."""
    A, k = params.A, params.k
    thr = _ExpThreshold(A * k)
    out = []

    def walk(pn, qn, pm, qm, P, depth):
        if depth == k:
            out.append(cylinder_from_rows(pn, qn, pm, qm))
            return
        for a in range(1, thr.floor_div(P) + 1):
            if P * a <= thr.lo:  # P*a < exp(Ak) certified
                walk(a * pn + pm, a * qn + qm, pn, qn, P * a, depth + 1)
            elif P * a < thr.hi:
                raise ArithmeticError("threshold enclosure too wide")

    walk(0, 1, 1, 0, 1, 0)
    return iset_normalize(out)


# ---------------------------------------------------------------------------
# sparse (certified-bound) sets


class PathCylinders:
    """Convergent rows along a fixed element path ``[0; a_1, a_2, ...]``, memoized."""

    def __init__(self, path: CFStream):
        if path.a0 != 0:
            raise ValueError("witness paths live in (0, 1)")
        self.path = path
        self.rows = [(1, 0), (0, 1)]
        self.products = [1]
        self._cyl: dict[int, RatInterval] = {}

    def _grow(self, depth: int):
        while len(self.rows) - 2 < depth:
            i = len(self.rows) - 1
            a = self.path.element(i)
            (pm, qm), (pn, qn) = self.rows[-2], self.rows[-1]
            self.rows.append((a * pn + pm, a * qn + qm))
            self.products.append(self.products[-1] * a)

    def element(self, i: int) -> int:
        return self.path.element(i)

    def product(self, depth: int) -> int:
        self._grow(depth)
        return self.products[depth]

    def cylinder(self, depth: int) -> RatInterval:
        if depth not in self._cyl:
            self._grow(depth)
            (pm, qm), (pn, qn) = self.rows[depth], self.rows[depth + 1]
            self._cyl[depth] = cylinder_from_rows(pn, qn, pm, qm)
        return self._cyl[depth]


def g_path(A) -> CFStream:
    """Constant path ``[0; w, w, ...]`` with ``w > e^A``, so every prefix clears G1."""
    w = floor_exp_ratio(Fraction(A), 1) + 1
    return CFStream.periodic(0, (), (w,))


def f_path() -> CFStream:
    """All-ones path: satisfies (E1) for every phi > 1 and every m."""
    return CFStream.periodic(0, (), (1,))


def sparse_G0(params: GParams, path: PathCylinders | None = None) -> EnumeratedSet:
    A, k = params.A, params.k
    if path is None:
        path = PathCylinders(g_path(A))
    tail = gamma_tail_upper(k, A * k)
    inner = IntervalSet()
    P = path.product(k)
    if ln_bounds(Fraction(P), 64)[0] > A * k:
        inner = IntervalSet([path.cylinder(k)])
    echo = {"set": "G0", "A": _ratstr(A), "k": k, "mode": "sparse"}
    return EnumeratedSet(inner, tail, echo)


def f0_measure_bound(m: int, k: int, phi: PhiSchedule) -> Fraction:
    """``|F0(m, k)| <= prod_i (1 - 1/ceil(phi(m+i)))``."""
    b = Fraction(1)
    for i in range(1, k + 1):
        b *= 1 - Fraction(1, phi.limit(m + i) + 1)
    return b


def sparse_F0(m: int, k: int, phi: PhiSchedule, path: PathCylinders | None = None,
              bound: Fraction | None = None) -> EnumeratedSet:
    """Witness cylinder (if the path meets the constraint) plus the product bound.

    ``bound`` lets a caller pass a cached ``f0_measure_bound(m, k, phi)``.
    """
    if path is None:
        path = PathCylinders(f_path())
    if bound is None:
        phi.check(m + 1, m + k)
        bound = f0_measure_bound(m, k, phi)
    tail = bound
    ok = all(path.element(m + i) <= phi.limit(m + i) for i in range(1, k + 1))
    inner = IntervalSet([path.cylinder(m + k)]) if ok else IntervalSet()
    echo = {"set": "F0", "m": m, "k": k, "phi": phi.name, "mode": "sparse"}
    return EnumeratedSet(inner, tail, echo)


# ---------------------------------------------------------------------------
# depth families


class DepthFamily:
    """``depth -> EnumeratedSet`` with cached certified upper bounds.

    Depths up to ``exact_depth`` are enumerated until the first budget failure;
    deeper ones are sparse.
    """

    kind = "?"

    def __init__(self, path: CFStream, exact_budget: int, exact_depth: int | None = None,
                 cylinders: PathCylinders | None = None):
        self.cylinders = cylinders if cylinders is not None else PathCylinders(path)
        self.exact_budget = exact_budget
        self.exact_depth = (1 << 30) if exact_depth is None else exact_depth
        self._pieces: dict[int, EnumeratedSet] = {}
        self._upper: dict[int, Fraction] = {}
        self._exact_ceiling: int | None = None if exact_budget > 0 else 0
        self._bits = np.full(64, _UNSET, dtype=np.int64)
        self._filled = 0  # bits known for every depth below this

    def _exact(self, depth: int) -> EnumeratedSet:
        raise NotImplementedError

    def _sparse(self, depth: int) -> EnumeratedSet:
        raise NotImplementedError

    @property
    def exact_ceiling(self) -> int:
        """Deepest depth that may be enumerated (as known so far)."""
        c = self.exact_depth
        return c if self._exact_ceiling is None else min(c, self._exact_ceiling)

    def is_sparse(self, depth: int) -> bool:
        self(depth)
        return depth > self.exact_ceiling

    def __call__(self, depth: int) -> EnumeratedSet:
        if depth in self._pieces:
            return self._pieces[depth]
        piece = None
        if depth <= self.exact_ceiling:
            try:
                piece = self._exact(depth)
            except BudgetExhausted:
                self._exact_ceiling = depth - 1
        if piece is None:
            piece = self._sparse(depth)
        self._pieces[depth] = piece
        return piece

    def upper(self, depth: int) -> Fraction:
        if depth not in self._upper:
            self._upper[depth] = self(depth).upper
        return self._upper[depth]

    def bits(self, depth: int) -> int:
        """Largest ``s`` with ``upper(depth) < 2**-s``."""
        if depth >= len(self._bits):
            grown = np.full(max(2 * len(self._bits), depth + 1), _UNSET, dtype=np.int64)
            grown[:len(self._bits)] = self._bits
            self._bits = grown
        if self._bits[depth] == _UNSET:
            self._bits[depth] = _dyadic_exponent(self.upper(depth))
        return int(self._bits[depth])

    def _fill(self, lo: int, hi: int) -> None:
        for x in range(max(lo, self._filled), hi + 1):
            self.bits(x)
        if lo <= self._filled:
            self._filled = max(self._filled, hi + 1)

    def min_depth(self, start: int, s: int, limit: int) -> int:
        """Smallest ``d`` in ``[start, limit]`` with ``upper(d) < 2**-s``."""
        d = start
        step = 64
        while d <= limit:
            hi = min(limit, d + step - 1)
            if d < self._filled:
                # known region first, then only the new depths
                known = min(hi, self._filled - 1)
                hits = np.flatnonzero(self._bits[d:known + 1] >= s)
                if hits.size:
                    return d + int(hits[0])
                d = known + 1
                if d > hi:
                    continue
            self._fill(d, hi)
            hits = np.flatnonzero(self._bits[d:hi + 1] >= s)
            if hits.size:
                return d + int(hits[0])
            d = hi + 1
            step *= 2
        raise BudgetExhausted(f"no depth in [{start}, {limit}] brings the {self.kind} "
                              f"piece below 2^-{s}")


_UNSET = np.iinfo(np.int64).min


def _dyadic_exponent(u: Fraction) -> int:
    if u <= 0:
        return 1 << 40
    n, D = u.numerator, u.denominator
    s = D.bit_length() - n.bit_length() + 1
    while s > -64 and n << max(s, 0) >= D << max(-s, 0):
        s -= 1
    return s


class GFamily(DepthFamily):
    kind = "G"

    def __init__(self, A=3, exact_budget: int = 4000, path: CFStream | None = None,
                 exact_depth: int | None = None, cylinders: PathCylinders | None = None):
        self.A = Fraction(A)
        if not validate_A(self.A):
            raise ValueError(f"A = {self.A} fails A - ln A - ln 2 - 1 > 0")
        super().__init__(path or g_path(self.A), exact_budget, exact_depth, cylinders)

    def _exact(self, depth):
        return enumerate_G0(GParams(self.A, depth), node_budget=self.exact_budget)

    def _sparse(self, depth):
        return sparse_G0(GParams(self.A, depth), self.cylinders)


class FFamily(DepthFamily):
    kind = "F"

    def __init__(self, m: int, phi: PhiSchedule, cap: int = 4, exact_budget: int = 4000,
                 path: CFStream | None = None, exact_depth: int | None = None,
                 cylinders: PathCylinders | None = None):
        self.m, self.phi, self.cap = m, phi, cap
        super().__init__(path or f_path(), exact_budget, exact_depth, cylinders)

    def _exact(self, depth):
        return enumerate_F0(self.m, depth, self.phi, self.cap, max_cylinders=self.exact_budget,
                            weighted_tail=True)

    def _sparse(self, depth):
        return sparse_F0(self.m, depth, self.phi, self.cylinders, bound=self._bound(depth))

    def _bound(self, depth: int) -> Fraction:
        """Cached ``f0_measure_bound(m, depth, phi)``, grown one factor at a time."""
        if not hasattr(self, "_bounds"):
            self._bounds = [Fraction(1)]
        b = self._bounds
        while len(b) <= depth:
            i = self.m + len(b)
            if self.phi(i) <= 1 or (i > self.m + 1 and self.phi(i) < self.phi(i - 1)):
                raise ValueError(f"phi must be > 1 and nondecreasing (fails at {i})")
            b.append(b[-1] * (1 - Fraction(1, self.phi.limit(i) + 1)))
        return b[depth]


# ---------------------------------------------------------------------------
# whole-line extension


@dataclass
class LineExtension:
    k: int
    j_range: tuple[int, int]
    n_of_j: dict[int, int]
    pieces: dict[int, EnumeratedSet]
    _combined: EnumeratedSet | None = field(default=None, repr=False)

    @property
    def measure(self) -> Fraction:
        return sum((p.measure for p in self.pieces.values()), Fraction(0))

    @property
    def tail_bound(self) -> Fraction:
        return sum((p.tail_bound for p in self.pieces.values()), Fraction(0))

    @property
    def upper(self) -> Fraction:
        return self.measure + self.tail_bound

    def piece_bound(self, j: int) -> Fraction:
        return Fraction(1, 2 ** (abs(j) + self.k))

    @property
    def combined(self) -> EnumeratedSet:
        if self._combined is None:
            inner = iset_normalize(iv for j, p in self.pieces.items()
                                   for iv in iset_affine(p.inner, j, 1).intervals)
            self._combined = EnumeratedSet(inner, self.tail_bound,
                                           {"k": self.k, "j_range": list(self.j_range)})
        return self._combined


def extend_to_line(family: DepthFamily, k: int, j_range: tuple[int, int],
                   max_increment: int = 1 << 14) -> LineExtension:
    """Translate ``family(k + n(j))`` to ``j + (0, 1)`` for each ``j`` in range.

    ``n(j) >= 1`` is the smallest increment whose piece has certified measure
    below ``2**-(|j| + k)``.
    """
    jlo, jhi = j_range
    if not jlo <= 0 <= jhi:
        raise ValueError("j_range must contain 0")
    n_of_j, pieces = {}, {}
    for j in range(jlo, jhi + 1):
        d = family.min_depth(k + 1, abs(j) + k, k + max_increment)
        n_of_j[j] = d - k
        pieces[j] = family(d)
    return LineExtension(k, (jlo, jhi), n_of_j, pieces)
