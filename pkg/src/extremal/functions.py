"""Explicit construction of the level functions f_Fm, f_Gm and their sums.

Every factor except ``1/sqrt(c_l)`` is an exact rational: the cutoff ``u``, the
Urysohn ramps ``v`` (piecewise linear over rational covers) and the arguments.
The square-root factor is carried as a certified enclosure, so every value
comes back as ``[lo, hi]`` together with the exact rational parts of the
contributing terms.

Sets are only ever built to a budget.  Evaluation either finishes exactly for
the function defined by the built sets, or raises :class:`BudgetExhausted`.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Sequence

from .certified import ln_bounds, sqrt_bounds
from .intervals import (
    IntervalSet,
    RatInterval,
    iset_affine,
    iset_normalize,
    iset_to_quads,
)
from .khinchin_sets import (
    BudgetExhausted,
    DepthFamily,
    EnumeratedSet,
    FFamily,
    GFamily,
    LineExtension,
    PathCylinders,
    PhiSchedule,
    extend_to_line,
    f_path,
    g_path,
)

HALF = Fraction(1, 2)
ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# piecewise-linear functions


class PiecewiseLinear:
    """Continuous piecewise-linear function, constant beyond the end breakpoints."""

    def __init__(self, points: Sequence[tuple]):
        pts = [(Fraction(x), Fraction(y)) for x, y in points]
        if not pts:
            raise ValueError("need at least one breakpoint")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("breakpoints must be strictly increasing")
        self.xs = [p[0] for p in pts]
        self.ys = [p[1] for p in pts]

    @property
    def breakpoints(self) -> list[tuple[Fraction, Fraction]]:
        return list(zip(self.xs, self.ys))

    def __len__(self):
        return len(self.xs)

    def __call__(self, x) -> Fraction:
        xs, ys = self.xs, self.ys
        i = bisect_right(xs, x)
        if i == 0:
            return ys[0]
        if i == len(xs):
            return ys[-1]
        x0, x1, y0, y1 = xs[i - 1], xs[i], ys[i - 1], ys[i]
        if y0 == y1:
            return y0
        return y0 + (y1 - y0) * (x - x0) / (x1 - x0)


U_FUNCTION = PiecewiseLinear([(-1, 1), (-HALF, 0), (HALF, 0), (1, 1)])


def u_eval(x) -> Fraction:
    a = abs(Fraction(x))
    if a < HALF:
        return ZERO
    if a < 1:
        return 2 * a - 1
    return ONE


# ---------------------------------------------------------------------------
# growth sequences


@dataclass(frozen=True)
class GrowthSequence:
    """Positive, nondecreasing ``c_n`` with rational values."""

    name: str
    rule: Callable[[int], Fraction] = field(compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("c_n is indexed from n = 1")
        c = self._cache.get(n)
        if c is None:
            c = Fraction(self.rule(n))
            if c <= 0:
                raise ValueError(f"c_{n} = {c} is not positive")
            if n > 1 and c < self(n - 1):
                raise ValueError(f"c_{n} = {c} breaks monotonicity")
            self._cache[n] = c
        return c

    def inv_sqrt_bounds(self, n: int, bits: int = 80) -> tuple[Fraction, Fraction]:
        key = ("isq", n, bits)
        if key not in self._cache:
            lo, hi = sqrt_bounds(self(n), bits)
            self._cache[key] = (1 / hi, 1 / lo)
        return self._cache[key]


_GRID = 1 << 64


def _log_rule(n: int) -> Fraction:
    lo, _ = ln_bounds(Fraction(n + 1), 160)
    return Fraction(floor(lo * _GRID), _GRID)


def _sqrt_rule(n: int) -> Fraction:
    return sqrt_bounds(Fraction(n), 64)[0]


GROWTH_PRESETS: dict[str, Callable[[int], Fraction]] = {
    "log": _log_rule,
    "sqrt": _sqrt_rule,
    "linear": lambda n: Fraction(n),
}


def growth_preset(name: str) -> GrowthSequence:
    """``log``: ln(n+1), ``sqrt``: sqrt(n), ``linear``: n.

    Irrational presets are rounded down onto the 2**-64 grid, which keeps them
    positive and nondecreasing.
    """
    if name not in GROWTH_PRESETS:
        raise ValueError(f"unknown growth preset {name!r}; choose from {sorted(GROWTH_PRESETS)}")
    return GrowthSequence(name, GROWTH_PRESETS[name])


def normalize_growth(prefix: Sequence, tail: Callable[[int], Fraction] | None = None, *,
                     divergent: bool = False, name: str = "custom") -> GrowthSequence:
    """Make ``c_n`` positive and nondecreasing.

    ``prefix`` gives ``c_1 .. c_N``; ``tail(n)`` gives ``c_n`` for ``n > N`` and must
    be positive and nondecreasing there.  Nonpositive entries become 1, then
    each ``c_n`` is replaced by ``inf_{k >= n} c_k``.
    """
    if not divergent:
        raise ValueError("the sequence must be declared divergent (c_n -> infinity)")
    if tail is None:
        raise ValueError("a divergent sequence needs a tail rule beyond the prefix")
    N = len(prefix)
    vals = [Fraction(c) if Fraction(c) > 0 else ONE for c in prefix]
    running = Fraction(tail(N + 1))
    if running <= 0:
        raise ValueError("tail must be positive")
    for i in range(N - 1, -1, -1):
        running = min(running, vals[i])
        vals[i] = running
    frozen = tuple(vals)

    def rule(n, _v=frozen, _t=tail):
        return _v[n - 1] if n <= len(_v) else Fraction(_t(n))

    return GrowthSequence(name, rule)


# ---------------------------------------------------------------------------
# line families and schedules


class LineFamily:
    """``k -> extend_to_line(family, k, j_range)``, cached."""

    def __init__(self, family: DepthFamily, j_range: tuple[int, int], max_increment: int = 1 << 14):
        self.family = family
        self.j_range = tuple(j_range)
        self.max_increment = max_increment
        self._cache: dict[int, LineExtension] = {}
        self._upper: dict[int, Fraction] = {}

    def __call__(self, k: int) -> LineExtension:
        if k not in self._cache:
            self._cache[k] = extend_to_line(self.family, k, self.j_range, self.max_increment)
        return self._cache[k]

    def upper(self, k: int) -> Fraction:
        if k not in self._upper:
            self._upper[k] = self(k).upper
        return self._upper[k]

    def all_sparse(self, k: int) -> bool:
        """True if every piece at ``k`` (depths >= k + 1) is a sparse single cylinder."""
        fam = self.family
        d = k + 1
        while d <= fam.exact_ceiling:
            if d > k + 64:
                return False
            fam(d)
            d += 1
        return k + 1 > fam.exact_ceiling


def schedule_target(kind: str, l: int, m: int | None = None) -> Fraction:
    """``(1/l) 2**-(m+l+1)``; with ``m=None`` the m-free ``(1/l) 2**-(l+1)``."""
    shift = l + 1 + (m or 0)
    return Fraction(1, l * 2 ** shift)


class Schedule:
    """Lazily extended increasing ``l -> k(l)`` with certified piece measures below target."""

    def __init__(self, family, kind: str, m: int | None, l_max: int, k_limit: int = 1 << 16):
        self.family = family
        self.kind = kind
        self.m = m
        self.l_max = l_max
        self.k_limit = k_limit
        self.ks: list[int] = []

    def target(self, l: int) -> Fraction:
        return schedule_target(self.kind, l, self.m)

    def _upper(self, k):
        fam = self.family
        return fam.upper(k) if hasattr(fam, "upper") else fam(k).upper

    def __call__(self, l: int) -> int:
        if l < 1:
            raise ValueError("l starts at 1")
        if l > self.l_max:
            raise BudgetExhausted(f"schedule requested at l = {l} beyond l_max = {self.l_max}")
        while len(self.ks) < l:
            ll = len(self.ks) + 1
            if self.ks:
                k = self.ks[-1] + 1
            else:
                k = self.m if self.kind == "F" else 1
            target = self.target(ll)
            while self._upper(k) >= target:
                k += 1
                if k > self.k_limit:
                    raise BudgetExhausted(f"no k <= {self.k_limit} meets the target at l = {ll}")
            self.ks.append(k)
        return self.ks[l - 1]

    def lower_bound(self, l: int) -> int:
        """A value ``<= k(l)``, without extending past what is built."""
        if l <= len(self.ks):
            return self.ks[l - 1]
        if not self.ks:
            return l
        return self.ks[-1] + (l - len(self.ks))

    def __len__(self):
        return len(self.ks)


def choose_schedule(family, kind: str, l_max: int, m: int | None = None) -> Schedule:
    """Minimal increasing schedule for ``l = 1 .. l_max``.

    ``family`` maps ``k`` to a set with certified ``upper`` (a :class:`LineFamily` or any
    callable returning an object with ``.upper``).
    """
    if kind not in ("F", "G"):
        raise ValueError("kind must be 'F' or 'G'")
    if kind == "F" and m is None:
        raise ValueError("F schedules need m")
    sched = Schedule(family, kind, m, l_max)
    if l_max >= 1:
        sched(l_max)
    return sched


# ---------------------------------------------------------------------------
# covers and Urysohn ramps


@dataclass(frozen=True)
class CoverPair:
    inner: IntervalSet
    outer: IntervalSet
    pad: Fraction


def build_cover(inner: IntervalSet) -> CoverPair:
    """Pad every interval by one ``eps`` so closures sit strictly inside the cover.

    ``eps = min(smallest gap / 3, distance to 0 / 2, measure / (4 * count))``.
    """
    ivs = inner.intervals
    mu = inner.measure
    if not ivs or mu == 0:
        raise ValueError("cannot cover a set of measure zero")
    dist0 = None
    for iv in ivs:
        if iv.lo <= 0 <= iv.hi:
            raise ValueError(f"0 lies in the closure of {iv}")
        d = iv.lo if iv.lo > 0 else -iv.hi
        dist0 = d if dist0 is None else min(dist0, d)
    eps = min(dist0 / 2, mu / (4 * len(ivs)))
    for a, b in zip(ivs, ivs[1:]):
        eps = min(eps, (b.lo - a.hi) / 3)
    outer = IntervalSet([RatInterval(iv.lo - eps, iv.hi + eps) for iv in ivs])
    return CoverPair(inner, outer, eps)


def build_urysohn(cover: CoverPair) -> PiecewiseLinear:
    """1 on the closed inner intervals, 0 off the cover, linear in between."""
    pts = []
    e = cover.pad
    for iv in cover.inner.intervals:
        pts += [(iv.lo - e, ZERO), (iv.lo, ONE), (iv.hi, ONE), (iv.hi + e, ZERO)]
    return PiecewiseLinear(pts)


def trim_origin(es: EnumeratedSet) -> EnumeratedSet:
    """Cut intervals touching 0 back to half their reach; the cut goes to the tail.

    0 never belongs to the sets, but it can be a limit point (tail cylinders
    ``a_1 >= N``), and covers must keep it outside.
    """
    out, extra = [], ZERO
    for iv in es.inner.intervals:
        if iv.lo < 0 < iv.hi or iv.lo == 0 or iv.hi == 0:
            if iv.lo < 0:
                out.append(RatInterval(iv.lo, iv.lo / 2))
                extra += -iv.lo / 2
            if iv.hi > 0:
                out.append(RatInterval(iv.hi / 2, iv.hi))
                extra += iv.hi / 2
        else:
            out.append(iv)
    if not extra:
        return es
    return EnumeratedSet(IntervalSet(out), es.tail_bound + extra, es.params_echo)


# ---------------------------------------------------------------------------
# per-level banks of covers


class CoverBank:
    """Covers and ramps for one level (kind, m), built lazily from its schedule."""

    def __init__(self, kind: str, m: int, lines: LineFamily, l_max: int):
        self.kind, self.m = kind, m
        self.lines = lines
        self.schedule = Schedule(lines, kind, m, l_max)
        self._sets: dict[int, EnumeratedSet] = {}
        self._covers: dict[int, CoverPair] = {}
        self._ramps: dict[int, PiecewiseLinear] = {}
        self._l_dense: int | None = None
        self._hulls: dict[int, tuple[Fraction, Fraction]] = {}
        self._fhulls: dict[int, tuple[float, float]] = {}

    @property
    def l_max(self) -> int:
        return self.schedule.l_max

    def k(self, l: int) -> int:
        return self.schedule(l)

    def line_set(self, l: int) -> EnumeratedSet:
        if l not in self._sets:
            self._sets[l] = trim_origin(self.lines(self.k(l)).combined)
        return self._sets[l]

    def cover(self, l: int) -> CoverPair:
        if l not in self._covers:
            self._covers[l] = build_cover(self.line_set(l).inner)
        return self._covers[l]

    def ramp(self, l: int) -> PiecewiseLinear:
        if l not in self._ramps:
            self._ramps[l] = build_urysohn(self.cover(l))
        return self._ramps[l]

    def v(self, l: int, y) -> Fraction:
        return self.ramp(l)(y)

    # -- candidate search ------------------------------------------------

    @property
    def l_dense(self) -> int:
        """Largest ``l`` whose line set still has an enumerated (multi-interval) piece."""
        if self._l_dense is None:
            l = 0
            while l < self.l_max and not self.lines.all_sparse(self.k(l + 1)):
                l += 1
            self._l_dense = l
        return self._l_dense

    def _cyl_depth(self, d: int) -> int:
        return d + self.m if self.kind == "F" else d

    def hull(self, k: int) -> tuple[Fraction, Fraction]:
        """Interval (inside a unit cell) enclosing every sparse cover piece at level ``>= k``."""
        h = self._hulls.get(k)
        if h is None:
            cyl = self.lines.family.cylinders.cylinder(self._cyl_depth(k + 1))
            w = cyl.length
            h = self._hulls[k] = (cyl.lo - w, cyl.hi + w)
        return h

    def float_hull(self, k: int) -> tuple[float, float]:
        """Float widening of :meth:`hull`, safe as a prefilter."""
        h = self._fhulls.get(k)
        if h is None:
            lo, hi = self.hull(k)
            pad = 1e-9 * float(hi - lo) + 1e-12
            h = self._fhulls[k] = (float(lo) - pad, float(hi) + pad)
        return h

    def candidates(self, x: Fraction, l_bound: int) -> list[int]:
        """Every ``l <= l_bound`` with ``x / l`` in the support of ``v_l``."""
        if x == 0 or l_bound < 1:
            return []
        out = []
        dense = min(self.l_dense, l_bound)
        for l in range(1, dense + 1):
            if self.v(l, x / l) > 0:
                out.append(l)
        start = dense + 1
        if start > l_bound:
            return out
        h_lo, h_hi = self.hull(self.schedule.lower_bound(start))
        if not 0 < h_lo:
            raise ValueError("cover hull reaches 0; deepen the exact part")
        # float windows, widened; every survivor is re-checked exactly
        f_lo, f_hi = float(h_lo) * (1 - 1e-9), float(h_hi) * (1 + 1e-9)
        xf = float(x)
        jlo, jhi = self.lines.j_range
        if x > 0:
            jlo, jhi = max(jlo, 0), min(jhi, floor(x))
        else:
            jlo, jhi = max(jlo, floor(x) - 1), min(jhi, -1)
        for j in range(jlo, jhi + 1):
            a, b = j + f_lo, j + f_hi
            if a * xf <= 0 or b * xf <= 0:
                continue  # x / l has the wrong sign for this cell
            w1, w2 = xf / a, xf / b
            lo_l, hi_l = min(w1, w2), max(w1, w2)
            for l in range(max(start, floor(lo_l) - 1), min(l_bound, ceil(hi_l) + 1) + 1):
                kb = self.schedule.lower_bound(l) if l > self.l_max else self.k(l)
                g_lo, g_hi = self.float_hull(kb)
                yf = xf / l - j
                if not g_lo < yf < g_hi:
                    continue
                y = x / l
                c_lo, c_hi = self.hull(kb)
                if not j + c_lo < y < j + c_hi:
                    continue
                if l > self.l_max:
                    raise BudgetExhausted(f"{self.kind}-level m={self.m} needs the cover at "
                                          f"l = {l} > l_max = {self.l_max}")
                if self.v(l, y) > 0:
                    out.append(l)
        return sorted(set(out))

    def to_dict(self, l_upto: int) -> dict:
        return {
            "kind": self.kind,
            "m": self.m,
            "schedule": [self.k(l) for l in range(1, l_upto + 1)],
            "covers": {str(l): {"inner": iset_to_quads(self.cover(l).inner),
                                "pad": _rs(self.cover(l).pad)}
                       for l in range(1, l_upto + 1)},
        }


def _rs(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True)
class LevelValue:
    """``f_Km(x)`` as an enclosure plus the exact rational parts of nonzero terms."""

    kind: str
    m: int
    x: Fraction
    terms: tuple[tuple[int, Fraction], ...]
    lo: Fraction
    hi: Fraction

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def error(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True)
class TotalValue:
    x: Fraction
    f_F: tuple[Fraction, Fraction]
    f_G: tuple[Fraction, Fraction]
    levels: tuple[LevelValue, ...]

    @property
    def f_E(self) -> tuple[Fraction, Fraction]:
        return self.f_F[0] + self.f_G[0], self.f_F[1] + self.f_G[1]

    @property
    def terms(self):
        """``(kind, m, l, rational part)`` for every nonzero term."""
        return [(lv.kind, lv.m, l, R) for lv in self.levels for l, R in lv.terms]

    @property
    def error(self) -> Fraction:
        lo, hi = self.f_E
        return hi - lo


def _enclose(terms, growth: GrowthSequence) -> tuple[Fraction, Fraction]:
    lo = hi = ZERO
    for l, R in terms:
        a, b = growth.inv_sqrt_bounds(l)
        lo, hi = max(lo, R * a), max(hi, R * b)
    return lo, hi


def l_bound(x: Fraction, m: int) -> int:
    return max(ceil(2 * m * x * x), 1)


def level_terms(bank: CoverBank, x: Fraction, m: int, ls) -> list[tuple[int, Fraction]]:
    ux = u_eval(x / m)
    if ux == 0:
        return []
    out = []
    for l in ls:
        R = bank.v(l, x / l)
        if R:
            R *= u_eval(m * x * x / l)
            if R:
                out.append((l, R * ux))
    return out


# ---------------------------------------------------------------------------
# contexts


@dataclass(frozen=True)
class BuildConfig:
    A: Fraction = Fraction(3)
    phi: str = "const2"
    cap: int = 4
    growth: str = "log"
    j_range: tuple[int, int] = (-8, 8)
    l_max: int = 4096
    m_max: int = 128
    exact_budget: int = 4000
    g_exact_depth: int = 2
    f_exact_depth: int = 0
    max_increment: int = 1 << 14


class FunctionContext:
    """Evaluation context for the level functions and their sums, exact within budget."""

    def __init__(self, cfg: BuildConfig = BuildConfig(), growth: GrowthSequence | None = None):
        self.cfg = cfg
        self.growth = growth or growth_preset(cfg.growth)
        self.phi = PhiSchedule.preset(cfg.phi)
        self._g_lines = LineFamily(
            GFamily(cfg.A, cfg.exact_budget, exact_depth=cfg.g_exact_depth),
            cfg.j_range, cfg.max_increment)
        self._f_path = PathCylinders(f_path())
        self._f_lines: dict[int, LineFamily] = {}
        self._banks: dict[tuple[str, int], CoverBank] = {}

    def lines(self, kind: str, m: int) -> LineFamily:
        if kind == "G":
            return self._g_lines
        if m not in self._f_lines:
            fam = FFamily(m, self.phi, self.cfg.cap, self.cfg.exact_budget,
                          exact_depth=self.cfg.f_exact_depth, cylinders=self._f_path)
            self._f_lines[m] = LineFamily(fam, self.cfg.j_range, self.cfg.max_increment)
        return self._f_lines[m]

    def bank(self, kind: str, m: int) -> CoverBank:
        if kind not in ("F", "G"):
            raise ValueError("kind must be 'F' or 'G'")
        if m < 1:
            raise ValueError("m starts at 1")
        if m > self.cfg.m_max:
            raise BudgetExhausted(f"level m = {m} beyond m_max = {self.cfg.m_max}")
        key = (kind, m)
        if key not in self._banks:
            self._banks[key] = CoverBank(kind, m, self.lines(kind, m), self.cfg.l_max)
        return self._banks[key]

    def level(self, x, m: int, kind: str) -> LevelValue:
        return f_level_eval(x, m, self, kind)

    def total(self, x) -> TotalValue:
        return f_total_eval(x, self)

    def function(self, kind: str, m: int | None = None) -> "BuiltFunction":
        return BuiltFunction(kind, m, self)

    def to_dict(self, l_upto: int = 4, m_upto: int = 2) -> dict:
        return {
            "growth": self.growth.name,
            "A": _rs(Fraction(self.cfg.A)),
            "phi": self.phi.name,
            "j_range": list(self.cfg.j_range),
            "levels": [self.bank(kind, m).to_dict(l_upto)
                       for kind in ("F", "G") for m in range(1, m_upto + 1)],
        }


@dataclass(frozen=True)
class BuiltFunction:
    """Callable view: ``f_Fm``/``f_Gm`` when ``m`` is set, else ``f_F``/``f_G``/``f_E``."""

    kind: str
    m: int | None
    ctx: FunctionContext

    def __call__(self, x) -> tuple[Fraction, Fraction]:
        if self.m is not None:
            v = f_level_eval(x, self.m, self.ctx, self.kind)
            return v.lo, v.hi
        t = f_total_eval(x, self.ctx)
        return {"F": t.f_F, "G": t.f_G, "E": t.f_E}[self.kind]


def f_level_eval(x, m: int, ctx: FunctionContext, kind: str) -> LevelValue:
    """``sup_l c_l**-1/2 v_l(x/l) u(m x**2 / l) u(x/m)`` as an exact finite max."""
    x = Fraction(x)
    if u_eval(x / m) == 0:
        return LevelValue(kind, m, x, (), ZERO, ZERO)
    bank = ctx.bank(kind, m)
    ls = bank.candidates(x, l_bound(x, m))
    terms = tuple(level_terms(bank, x, m, ls))
    lo, hi = _enclose(terms, ctx.growth)
    return LevelValue(kind, m, x, terms, lo, hi)


def f_total_eval(x, ctx: FunctionContext) -> TotalValue:
    """``f_F = sup_m f_Fm`` and ``f_G = sup_m f_Gm``; only ``m <= 2|x|`` can be nonzero."""
    x = Fraction(x)
    m_top = ceil(2 * abs(x))
    levels = []
    enc = {}
    for kind in ("F", "G"):
        lo = hi = ZERO
        for m in range(1, m_top + 1):
            lv = f_level_eval(x, m, ctx, kind)
            if lv.terms:
                levels.append(lv)
                lo, hi = max(lo, lv.lo), max(hi, lv.hi)
        enc[kind] = (lo, hi)
    return TotalValue(x, enc["F"], enc["G"], tuple(levels))


def certify_growth_bound(value: TotalValue | LevelValue, n: int, growth: GrowthSequence) -> bool:
    """Exact check of ``c_n * f**2 >= 1`` through a single term ``R / sqrt(c_l)``.

    ``f >= R / sqrt(c_l)`` for every term, so ``R**2 c_n >= c_l`` suffices.
    """
    cn = growth(n)
    if isinstance(value, TotalValue):
        terms = [(l, R) for _, _, l, R in value.terms]
    else:
        terms = list(value.terms)
    if any(R * R * cn >= growth(l) for l, R in terms):
        return True
    lo = value.f_E[0] if isinstance(value, TotalValue) else value.lo
    return cn * lo * lo >= 1


# ---------------------------------------------------------------------------
# support


@dataclass(frozen=True)
class SupportLevel:
    kind: str
    m: int
    support: IntervalSet
    built_measure: Fraction
    unbuilt_bound: Fraction

    @property
    def bound(self) -> Fraction:
        return self.built_measure + self.unbuilt_bound

    @property
    def ok(self) -> bool:
        return self.bound <= Fraction(1, 2 ** self.m)


def support_report(ctx: FunctionContext | None, m_max: int, l_upto: int = 16,
                   kinds: Sequence[str] = ("F", "G")) -> list[SupportLevel]:
    """Support superset ``U_l l * cover_l`` per level, with the unbuilt ``l`` bounded.

    For ``l > l_upto`` each scaled cover has measure below
    ``l * (3/2) * (1/l) 2**-(m+l+1)``, which sums to ``(3/2) 2**-(m+l_upto+1)``.
    """
    if ctx is None:
        return []
    out = []
    for kind in kinds:
        for m in range(1, m_max + 1):
            bank = ctx.bank(kind, m)
            upto = min(l_upto, bank.l_max)
            supp = iset_normalize(iv for l in range(1, upto + 1)
                                  for iv in iset_affine(bank.cover(l).outer, 0, l).intervals)
            rest = Fraction(3, 2) * Fraction(1, 2 ** (m + upto + 1))
            out.append(SupportLevel(kind, m, supp, supp.measure, rest))
    return out
