"""Experiment runner: property suites, the divergence table and Khinchin counting.

Everything here is deterministic for a fixed configuration; only the
``seconds`` fields of a report change between runs.
"""

from __future__ import annotations

import json
import random
import time

import numpy as np
from dataclasses import asdict, dataclass, field, fields, replace
from fractions import Fraction
from math import ceil, floor
from typing import Callable, Iterable, Sequence

from .certified import MAX_BITS, PrecisionExhausted, sqrt_bounds
from .cf import (
    CFStream,
    cf_evaluate,
    cf_from_rational,
    cf_negate,
    convergent_table,
)
from .functions import (
    BuildConfig,
    CoverBank,
    FunctionContext,
    TotalValue,
    certify_growth_bound,
    f_level_eval,
    f_total_eval,
    l_bound,
    support_report,
    u_eval,
)
from .intervals import (
    IntervalSet,
    RatInterval,
    fundamental_interval,
    iset_affine,
    iset_intersect,
)
from .khinchin_sets import (
    BudgetExhausted,
    GFamily,
    GParams,
    PhiSchedule,
    enumerate_F0,
    enumerate_G0,
    extend_to_line,
)


class ConfigError(ValueError):
    """Invalid experiment configuration (exit code 3)."""


class WitnessError(RuntimeError):
    """The witness intersection became empty."""


def ratstr(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal(x: Fraction, digits: int = 20) -> str:
    """Fixed-point rendering truncated toward zero; exact and deterministic."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    scaled = x.numerator * 10 ** digits // x.denominator
    whole, frac = divmod(scaled, 10 ** digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"not a rational number: {text!r}") from exc


# ---------------------------------------------------------------------------
# configuration


@dataclass(frozen=True)
class ExperimentConfig:
    m: int = 1
    k: int = 1
    phi: str = "const2"
    A: Fraction = Fraction(3)
    B: int = 4
    cap: int = 4
    l_max: int = 4096
    m_max: int = 128
    j_range: tuple[int, int] = (-8, 8)
    growth: str = "log"
    n_max: int = 32
    out: str | None = None
    format: str = "json"
    precision_bits: int = 128
    samples: int = 10_000
    oracle_samples: int = 1_000
    seed: int = 0
    witness: str = "G"
    witness_cell: int = 1
    x0: Fraction | None = None
    suites: tuple[str, ...] = ("cf", "intervals", "sets", "functions")

    def __post_init__(self):
        for name in ("m", "k", "B", "cap", "l_max", "m_max", "n_max", "precision_bits"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.samples < 0 or self.oracle_samples < 0:
            raise ConfigError("sample counts must be nonnegative")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be json or csv")
        if self.witness not in ("F", "G"):
            raise ConfigError("witness must be F or G")
        lo, hi = self.j_range
        if lo > hi:
            raise ConfigError("j_range must satisfy lo <= hi")
        try:
            PhiSchedule.preset(self.phi) if not self.phi.startswith("@") else None
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        unknown = set(self.suites) - set(SUITES)
        if unknown:
            raise ConfigError(f"unknown suites {sorted(unknown)}")

    def build_config(self) -> BuildConfig:
        return BuildConfig(A=self.A, phi=self.phi, cap=self.cap, growth=self.growth,
                           j_range=tuple(self.j_range), l_max=self.l_max, m_max=self.m_max)

    def phi_schedule(self) -> PhiSchedule:
        if self.phi.startswith("@"):
            return load_phi_table(self.phi[1:])
        return PhiSchedule.preset(self.phi)

    @classmethod
    def from_mapping(cls, data: dict) -> "ExperimentConfig":
        """Build from string values (config file or flags)."""
        kw = {}
        types = {f.name: f.type for f in fields(cls)}
        for key, raw in data.items():
            key = key.replace("-", "_")
            if key == "lmax":
                key = "l_max"
            elif key == "mmax":
                key = "m_max"
            elif key == "nmax":
                key = "n_max"
            elif key == "jrange":
                key = "j_range"
            if key not in types:
                raise ConfigError(f"unknown config key {key!r}")
            if raw is None:
                continue
            kw[key] = _coerce(key, raw)
        return cls(**kw)


def _coerce(key: str, raw):
    if not isinstance(raw, str):
        return raw
    raw = raw.strip()
    try:
        if key in ("A", "x0"):
            return parse_rational(raw)
        if key == "j_range":
            lo, hi = raw.split(":")
            return int(lo), int(hi)
        if key == "suites":
            return tuple(s for s in (p.strip() for p in raw.split(",")) if s)
        if key in ("phi", "growth", "out", "format", "witness"):
            return raw
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r}") from exc


def load_config_file(path: str) -> dict:
    """Flat ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            out[key.strip()] = value.strip()
    return out


def load_phi_table(path: str) -> PhiSchedule:
    """One rational per line (``phi(1)``, ``phi(2)``, ...)."""
    with open(path) as fh:
        vals = [parse_rational(t) for t in fh.read().split() if t]
    return PhiSchedule.from_table(vals)


# ---------------------------------------------------------------------------
# reports


@dataclass
class CheckResult:
    name: str
    status: str  # pass | fail | budget | error
    witness: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def exit_code(self) -> int:
        if any(c.status in ("fail", "error") for c in self.checks):
            return 1
        if any(c.status == "budget" for c in self.checks):
            return 2
        return 0

    def to_dict(self, timing: bool = True) -> dict:
        rows = []
        for c in self.checks:
            d = {"name": c.name, "status": c.status, "witness": c.witness}
            if timing:
                d["seconds"] = round(c.seconds, 6)
            rows.append(d)
        return {"checks": rows, "ok": self.ok}

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2)


class _Fail(Exception):
    def __init__(self, **witness):
        super().__init__(witness)
        self.witness = witness


def _run(report: Report, name: str, fn: Callable[[], dict | None]) -> None:
    t0 = time.perf_counter()
    try:
        witness = fn() or {}
        status = "pass"
    except _Fail as exc:
        status, witness = "fail", exc.witness
    except BudgetExhausted as exc:
        status, witness = "budget", {"error": str(exc)}
    except (ValueError, ArithmeticError, IndexError) as exc:
        status, witness = "fail", {"error": f"{type(exc).__name__}: {exc}"}
    report.checks.append(CheckResult(name, status, _stringify(witness), time.perf_counter() - t0))


def _stringify(obj):
    if isinstance(obj, Fraction):
        return ratstr(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# brute-force oracle


def ramp_value(cover, y: Fraction) -> Fraction:
    """Urysohn ramp from the cover data directly (no breakpoint table)."""
    e = cover.pad
    for iv in cover.inner.intervals:
        if iv.lo <= y <= iv.hi:
            return Fraction(1)
        if iv.lo - e < y < iv.lo:
            return (y - (iv.lo - e)) / e
        if iv.hi < y < iv.hi + e:
            return ((iv.hi + e) - y) / e
    return Fraction(0)


def _scaled_table(bank: CoverBank, top: int):
    """Float boxes around every ``l * outer_l`` interval, ``l <= top`` (a loose prefilter)."""
    key = ("scaled", top)
    cache = bank.__dict__.setdefault("_oracle", {})
    if key not in cache:
        ls, los, his = [], [], []
        for l in range(1, top + 1):
            for iv in bank.cover(l).outer.intervals:
                a, b = float(l * iv.lo), float(l * iv.hi)
                pad = 1e-9 * max(1.0, abs(a), abs(b))
                ls.append(l)
                los.append(a - pad)
                his.append(b + pad)
        cache[key] = (np.array(ls), np.array(los), np.array(his))
    return cache[key]


def brute_level_terms(x, m: int, ctx: FunctionContext, kind: str, factor: int = 4) -> dict[int, Fraction]:
    """Nonzero rational parts ``{l: R}`` for every ``l <= factor * l_bound(x)``.

    Scans the cover of every ``l`` in range; no candidate-window reasoning.
    """
    x = Fraction(x)
    bank = ctx.bank(kind, m)
    top = min(factor * l_bound(x, m), bank.l_max)
    ls, los, his = _scaled_table(bank, top)
    xf = float(x)
    out = {}
    for l in sorted(set(ls[(los < xf) & (his > xf)].tolist())):
        v = ramp_value(bank.cover(l), x / l)
        if v:
            R = v * u_eval(m * x * x / l) * u_eval(x / m)
            if R:
                out[l] = R
    return out


# ---------------------------------------------------------------------------
# witnesses


def construct_witness(ctx: FunctionContext, kind: str, m: int, n_max: int, cell: int) -> Fraction:
    """Midpoint of the largest interval of the intersected inner sets, cell ``cell``.

    The inner sets at levels ``1 .. n_max`` are intersected inside
    ``(cell, cell + 1)``.
    """
    lo, hi = ctx.cfg.j_range
    if not lo <= cell <= hi:
        raise WitnessError(f"witness cell j={cell} lies outside j_range {ctx.cfg.j_range}")
    bank = ctx.bank(kind, m)
    window = IntervalSet([RatInterval(cell, cell + 1)])
    current = window
    for l in range(1, n_max + 1):
        current = iset_intersect(current, iset_intersect(bank.line_set(l).inner, window))
        if not current.intervals:
            raise WitnessError(f"witness set empty at level l={l} ({kind}, m={m}, cell {cell})")
    best = max(current.intervals, key=lambda iv: (iv.length, -iv.lo))
    return best.midpoint


def in_inner(bank: CoverBank, l: int, x: Fraction) -> bool:
    inner = bank.line_set(l).inner
    iv = inner.locate(x)
    return iv is not None or any(x in (w.lo, w.hi) for w in inner.intervals)


# ---------------------------------------------------------------------------
# divergence


@dataclass(frozen=True)
class DivergenceRow:
    n: int
    c_n: Fraction
    f_E: tuple[Fraction, Fraction]
    aligned: bool
    certified: bool

    @property
    def passed(self) -> bool:
        return self.certified or not self.aligned

    def csv_fields(self, growth) -> list[str]:
        lo = self.f_E[0]
        s_lo, _ = sqrt_bounds(self.c_n, 80)
        return [str(self.n), ratstr(self.c_n), decimal(lo), decimal(self.c_n * lo),
                decimal(s_lo), str(self.aligned).lower(), str(self.passed).lower()]


DIVERGENCE_COLUMNS = ["n", "c_n", "f_E", "c_n*f_E", "sqrt_c_n_bound", "aligned", "pass"]


@dataclass(frozen=True)
class DivergenceTable:
    x0: Fraction
    m: int
    kind: str
    rows: tuple[DivergenceRow, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_csv(self, growth=None) -> str:
        lines = [",".join(DIVERGENCE_COLUMNS)]
        lines += [",".join(r.csv_fields(growth)) for r in self.rows]
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "x0": ratstr(self.x0), "m": self.m, "witness": self.kind,
            "rows": [{"n": r.n, "c_n": ratstr(r.c_n), "f_E_lo": ratstr(r.f_E[0]),
                      "f_E_hi": ratstr(r.f_E[1]), "aligned": r.aligned, "pass": r.passed}
                     for r in self.rows],
        }


def divergence_experiment(cfg: ExperimentConfig, ctx: FunctionContext | None = None) -> DivergenceTable:
    """``c_n f_E(n x0) >= sqrt(c_n)`` at every aligned ``n <= n_max``.

    ``n`` is aligned when ``x0`` lies in the level-``n`` inner set of the witness
    level ``m`` and ``m n x0**2 >= 1``, ``n |x0| >= m``.
    """
    ctx = ctx or FunctionContext(cfg.build_config())
    if cfg.n_max > ctx.cfg.l_max:
        raise BudgetExhausted(f"n_max = {cfg.n_max} exceeds l_max = {ctx.cfg.l_max}")
    kind, m = cfg.witness, cfg.m
    x0 = cfg.x0 if cfg.x0 is not None else construct_witness(ctx, kind, m, cfg.n_max, cfg.witness_cell)
    bank = ctx.bank(kind, m)
    rows = []
    for n in range(1, cfg.n_max + 1):
        x = n * x0
        aligned = (m * n * x0 * x0 >= 1 and n * abs(x0) >= m and in_inner(bank, n, x0))
        tv = f_total_eval(x, ctx)
        cert = certify_growth_bound(tv, n, ctx.growth)
        rows.append(DivergenceRow(n, ctx.growth(n), tv.f_E, aligned, cert))
    return DivergenceTable(x0, m, kind, tuple(rows))


# ---------------------------------------------------------------------------
# Khinchin counting


@dataclass(frozen=True)
class KhinchinRule:
    """``n -> b_n > 0`` with ``n b_n`` nonincreasing from ``monotone_from`` on."""

    name: str
    rule: Callable[[int], Fraction] = field(compare=False)
    divergent: bool = True
    monotone_from: int = 1

    def __call__(self, n: int) -> Fraction:
        b = Fraction(self.rule(n))
        if b <= 0:
            raise ValueError(f"b_{n} = {b} must be positive")
        return b

    def check(self, n_max: int) -> None:
        prev = None
        for n in range(self.monotone_from, n_max + 1):
            v = n * self(n)
            if prev is not None and v > prev:
                raise ValueError(f"n b_n increases at n = {n}")
            prev = v

    @classmethod
    def preset(cls, name: str) -> "KhinchinRule":
        table = {
            "inv_n": (lambda n: Fraction(1, n), True),
            "half_inv_n": (lambda n: Fraction(1, 2 * n), True),
            "inv_n2": (lambda n: Fraction(1, n * n), False),
            "inv_n3": (lambda n: Fraction(1, n ** 3), False),
        }
        if name not in table:
            raise ValueError(f"unknown rule {name!r}; choose from {sorted(table)}")
        rule, div = table[name]
        return cls(name, rule, div)


@dataclass(frozen=True)
class KhinchinRow:
    n: int
    m: int
    hit: bool
    cumulative: int


def _dyadic_enclosure(alpha: CFStream, bits: int) -> tuple[int, int]:
    lo, hi = alpha.bounds(bits)
    s = 1 << bits
    return floor(lo * s), ceil(hi * s)


def khinchin_count(alpha: CFStream, rule: KhinchinRule, n_max: int,
                   bits: int = 128) -> list[KhinchinRow]:
    """Count ``n <= n_max`` with ``|n alpha - m| < b_n`` (``m`` nearest to ``n alpha``).

    ``alpha`` is enclosed in ``[A, B] / 2**bits``; a pair whose classification is
    not decided by the enclosure is redone at doubled precision.
    """
    if n_max < 1:
        return []
    rule.check(min(n_max, rule.monotone_from + 64))
    exact = alpha.length is not None
    if exact:
        value = alpha.bounds()[0]
    enclosures = {}

    def enclosure(b):
        if b not in enclosures:
            enclosures[b] = _dyadic_enclosure(alpha, b)
        return enclosures[b]

    rows, total = [], 0
    for n in range(1, n_max + 1):
        b = rule(n)
        if exact:
            t = n * value
            m = floor(t + Fraction(1, 2))
            hit = abs(t - m) < b
        else:
            cur = bits
            p, q = b.numerator, b.denominator
            while True:
                A, Bv = enclosure(cur)
                s = 1 << cur
                lo, hi = n * A, n * Bv
                m = (lo + s // 2) // s
                if m == (hi + s // 2) // s:
                    e1, e2 = lo - m * s, hi - m * s
                    d_lo = e1 if e1 >= 0 else (-e2 if e2 <= 0 else 0)
                    d_hi = max(-e1, e2)
                    if d_hi * q < p * s:
                        hit = True
                        break
                    if d_lo * q >= p * s:
                        hit = False
                        break
                cur *= 2
                if cur > MAX_BITS:
                    raise PrecisionExhausted(f"cannot classify n = {n}")
        total += hit
        rows.append(KhinchinRow(n, m, hit, total))
    return rows


def sqrt2_stream() -> CFStream:
    return CFStream.periodic(1, (), (2,))


# ---------------------------------------------------------------------------
# property suites


def _suite_cf(report: Report, cfg: ExperimentConfig, rng: random.Random) -> None:
    def round_trip():
        for q in range(1, 301):
            for p in range(-300, 301):
                r = Fraction(p, q)
                if r.denominator != q:
                    continue
                if cf_evaluate(cf_from_rational(r)) != r:
                    raise _Fail(value=r)
        return {"range": "1 <= q <= 300, |p| <= 300"}

    def determinant():
        for _ in range(1000):
            els = [rng.randint(1, 50) for _ in range(rng.randint(1, 20))]
            t = convergent_table(rng.randint(-50, 50), els)
            for i in range(0, len(els) + 1):
                if t.p(i - 1) * t.q(i) - t.p(i) * t.q(i - 1) != (-1) ** i:
                    raise _Fail(elements=els, i=i)
        return {"samples": 1000}

    def negation():
        a = cf_from_rational(Fraction(3, 4))
        b = cf_negate(a)
        if (a.a0, a.elements) != (0, (1, 3)) or (b.a0, b.elements) != (-1, (4,)):
            raise _Fail(positive=str(a), negative=str(b))
        return {"3/4": str(a), "-3/4": str(b)}

    _run(report, "cf.round_trip", round_trip)
    _run(report, "cf.determinant_identity", determinant)
    _run(report, "cf.negation_anchors", negation)


def _suite_intervals(report: Report, cfg: ExperimentConfig, rng: random.Random) -> None:
    def partition():
        for N in (1, 10, 100):
            total = sum((fundamental_interval(convergent_table(0, [a])).length
                         for a in range(1, N + 1)), Fraction(0)) + Fraction(1, N + 1)
            if total != 1:
                raise _Fail(N=N, total=total)
        return {"N": [1, 10, 100]}

    _run(report, "intervals.depth1_partition", partition)


def _suite_sets(report: Report, cfg: ExperimentConfig, rng: random.Random) -> None:
    def g_exact():
        g1 = enumerate_G0(GParams(cfg.A, 1))
        g2 = enumerate_G0(GParams(cfg.A, 2))
        if cfg.A == 3 and g1.measure != Fraction(1, 21):
            raise _Fail(measure_k1=g1.measure)
        if not g2.measure < g1.measure:
            raise _Fail(measure_k1=g1.measure, measure_k2=g2.measure)
        return {"measure_k1": g1.measure, "measure_k2_float": float(g2.measure)}

    def f_example():
        s = enumerate_F0(1, 1, PhiSchedule.constant(2), 3)
        want = IntervalSet.of((Fraction(1, 4), Fraction(2, 7)), (Fraction(1, 3), Fraction(2, 5)),
                              (Fraction(1, 2), Fraction(2, 3)))
        if s.inner != want or s.tail_bound > Fraction(1, 4):
            raise _Fail(inner=str(s.inner), tail=s.tail_bound)
        return {"tail_bound": s.tail_bound}

    def extension():
        fam = GFamily(cfg.A)
        out = {}
        for k in (1, 2, 3, 4):
            ext = extend_to_line(fam, k, tuple(cfg.j_range))
            bound = Fraction(3, 2 ** k)
            if not ext.upper < bound:
                raise _Fail(k=k, upper=ext.upper, bound=bound)
            out[f"k{k}"] = float(ext.upper)
        return out

    _run(report, "sets.G_exactness", g_exact)
    _run(report, "sets.F_example", f_example)
    _run(report, "sets.extension_bound", extension)


def sample_points(ctx: FunctionContext, rng: random.Random, count: int, radius: int = 8,
                  levels: int = 6, l_top: int = 48) -> list[Fraction]:
    """Half uniform rationals in ``[-radius, radius]``, half aimed at scaled covers."""
    pts = []
    for i in range(count):
        if i % 2 == 0:
            q = rng.randint(1, 1000)
            pts.append(Fraction(rng.randint(-radius * q, radius * q), q))
            continue
        kind = rng.choice("FG")
        m = rng.randint(1, levels)
        l = rng.randint(1, l_top)
        cover = ctx.bank(kind, m).cover(l)
        iv = rng.choice(cover.outer.intervals)
        t = Fraction(rng.randint(0, 1 << 20), 1 << 20)
        y = iv.lo + t * (iv.hi - iv.lo)
        x = l * y
        if abs(x) > radius:
            x = Fraction(rng.randint(-radius * 1000, radius * 1000), 1000)
        pts.append(x)
    return pts


def _suite_functions(report: Report, cfg: ExperimentConfig, rng: random.Random,
                     ctx: FunctionContext | None = None) -> None:
    ctx = ctx or FunctionContext(cfg.build_config())
    levels = 6
    state = {}

    def points():
        state["pts"] = sample_points(ctx, rng, cfg.samples, levels=levels)
        return {"count": len(state["pts"])}

    _run(report, "functions.sampling", points)
    pts = state.get("pts", [])
    g = ctx.growth
    inv1_hi = g.inv_sqrt_bounds(1)[1]

    def p1_p4_p5():
        nonzero = 0
        c1 = g(1)
        for x in pts:
            for kind in ("F", "G"):
                for m in range(1, min(levels, ctx.cfg.m_max) + 1):
                    lv = f_level_eval(x, m, ctx, kind)
                    if lv.lo < 0 or lv.hi > inv1_hi:
                        raise _Fail(check="P1", x=x, m=m, kind=kind, hi=lv.hi)
                    for l, R in lv.terms:
                        if not 0 < R <= 1 or g(l) < c1:
                            raise _Fail(check="P1", x=x, m=m, kind=kind, l=l, R=R)
                    if m >= 2 * abs(x) and lv.terms:
                        raise _Fail(check="P4", x=x, m=m, kind=kind)
                    if lv.terms:
                        nonzero += 1
                        bank = ctx.bank(kind, m)
                        if not any(iset_affine(bank.cover(l).outer, 0, l).locate(x) is not None
                                   for l, _ in lv.terms):
                            raise _Fail(check="P5", x=x, m=m, kind=kind)
        return {"points": len(pts), "nonzero_levels": nonzero}

    def p6():
        rep = support_report(ctx, levels)
        for r in rep:
            if not r.ok:
                raise _Fail(kind=r.kind, m=r.m, bound=r.bound, target=Fraction(1, 2 ** r.m))
        out = {"levels": levels}
        for kind in ("F", "G"):
            total = sum((r.bound for r in rep if r.kind == kind), Fraction(0))
            if not total < 1:
                raise _Fail(kind=kind, total=total)
            out[f"{kind}_total"] = float(total)
        return out

    def continuity():
        # a jump of size J would make |f(x +- d) - f(x)| / d blow up like J / d
        checked = 0
        for kind in ("F", "G"):
            bank = ctx.bank(kind, 1)
            for l in (1, 2, 3):
                d1 = l * bank.cover(l).pad / 1024
                d2 = d1 / 2 ** 30
                for xb, _ in bank.ramp(l).breakpoints[:8]:
                    x = l * xb
                    mid = f_level_eval(x, 1, ctx, kind).lo
                    for sign in (-1, 1):
                        q1 = abs(f_level_eval(x + sign * d1, 1, ctx, kind).lo - mid) / d1
                        q2 = abs(f_level_eval(x + sign * d2, 1, ctx, kind).lo - mid) / d2
                        if q2 > 2 * q1 + 1:
                            raise _Fail(x=x, kind=kind, l=l, side=sign)
                    checked += 1
        return {"breakpoints": checked}

    def p3():
        table = divergence_experiment(replace(cfg, n_max=min(cfg.n_max, 32)), ctx)
        aligned = [r.n for r in table.rows if r.aligned]
        bad = [r.n for r in table.rows if not r.passed]
        if bad:
            raise _Fail(x0=table.x0, failing_n=bad)
        if not aligned:
            raise _Fail(x0=table.x0, reason="no aligned n")
        return {"x0": table.x0, "aligned": len(aligned)}

    def oracle():
        count = 0
        for x in sample_points(ctx, rng, cfg.oracle_samples, radius=4, levels=3, l_top=24):
            for kind in ("F", "G"):
                for m in (1, 2, 3):
                    lv = f_level_eval(x, m, ctx, kind)
                    fast = dict(lv.terms)
                    slow = brute_level_terms(x, m, ctx, kind)
                    if fast != slow:
                        raise _Fail(x=x, m=m, kind=kind, fast=sorted(fast), brute=sorted(slow))
                    count += 1
        return {"comparisons": count}

    _run(report, "functions.P1_P4_P5", p1_p4_p5)
    _run(report, "functions.P6_support", p6)
    _run(report, "functions.P2_continuity", continuity)
    _run(report, "functions.P3_alignment", p3)
    _run(report, "functions.oracle", oracle)


SUITES = {
    "cf": _suite_cf,
    "intervals": _suite_intervals,
    "sets": _suite_sets,
    "functions": _suite_functions,
}


def verify_properties(cfg: ExperimentConfig) -> Report:
    """Run the selected suites; failures and budget overruns are recorded per check."""
    report = Report()
    rng = random.Random(cfg.seed)
    for name in cfg.suites:
        SUITES[name](report, cfg, rng)
    return report
