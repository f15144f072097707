"""Certified real arithmetic on rational inputs.

Transcendental quantities (``ln``, ``exp``) go through mpmath's interval context,
which rounds outward; square roots are bracketed exactly with integer ``isqrt``.
Every helper returns rational bounds that provably enclose the true value.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import isqrt

from mpmath import iv, libmp

START_BITS = 64
MAX_BITS = 1 << 14

# mpmath's interval context keeps its precision globally
_IV_LOCK = threading.Lock()


class PrecisionExhausted(ArithmeticError):
    """A certified decision did not resolve within ``MAX_BITS``."""


def _to_iv(x: Fraction):
    x = Fraction(x)
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _bounds(v) -> tuple[Fraction, Fraction]:
    a, b = v._mpi_
    return Fraction(*libmp.to_rational(a)), Fraction(*libmp.to_rational(b))


def iv_eval(fn, bits: int):
    """Run ``fn`` (which builds an mpmath interval) at ``bits`` working precision."""
    with _IV_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            return _bounds(fn())
        finally:
            iv.prec = saved


def ln_bounds(x: Fraction, bits: int = START_BITS) -> tuple[Fraction, Fraction]:
    if x <= 0:
        raise ValueError("ln needs a positive argument")
    return iv_eval(lambda: iv.log(_to_iv(x)), bits)


def exp_bounds(x: Fraction, bits: int = START_BITS) -> tuple[Fraction, Fraction]:
    return iv_eval(lambda: iv.exp(_to_iv(x)), bits)


def sqrt_bounds(x: Fraction, bits: int = 80) -> tuple[Fraction, Fraction]:
    """``lo <= sqrt(x) <= hi`` with ``hi - lo <= 2**-bits`` (``lo == hi`` when exact)."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("sqrt of a negative number")
    scale = 1 << bits
    n = x.numerator * scale * scale // x.denominator
    s = isqrt(n)
    lo = Fraction(s, scale)
    if lo * lo == x:
        return lo, lo
    return lo, Fraction(s + 1, scale)


def sign_certified(fn, start_bits: int = START_BITS) -> int:
    """Sign of the real number enclosed by ``fn()``, escalating precision.

    ``fn`` must build an mpmath interval; the quantity must be nonzero.
    """
    bits = start_bits
    while bits <= MAX_BITS:
        lo, hi = iv_eval(fn, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits *= 2
    raise PrecisionExhausted("could not separate the value from zero")


def floor_exp_ratio(exponent: Fraction, divisor: int, start_bits: int = START_BITS) -> int:
    """``floor(exp(exponent) / divisor)`` for rational ``exponent != 0``.

    The quotient is never an integer (``exp`` of a nonzero rational is
    transcendental), so the floor is decided once the enclosure narrows.
    """
    exponent = Fraction(exponent)
    if exponent == 0:
        return 1 // divisor
    bits = max(start_bits, int(abs(exponent) * 2) + 32)
    while bits <= MAX_BITS:
        lo, hi = exp_bounds(exponent, bits)
        a, b = lo // divisor, hi // divisor
        if a == b:
            return int(a)
        bits *= 2
    raise PrecisionExhausted(f"floor(exp({exponent})/{divisor}) undecided")


def gamma_tail_upper(j: int, log_m_lo: Fraction, bits: int = START_BITS) -> Fraction:
    """Upper bound for ``P(Z_1 ... Z_j >= M)`` with ``P(Z >= t) = min(1, 2/t)`` iid.

    ``log_m_lo`` is a lower bound for ``ln M``.  With ``L = ln M - j ln 2`` the
    probability is the Gamma(j) upper tail ``exp(-L) * sum_{r<j} L**r / r!``.
    The result is a dyadic rational no smaller than that tail.
    """
    if j <= 0:
        return Fraction(1) if log_m_lo <= 0 else Fraction(0)

    def tail():
        L = _to_iv(log_m_lo) - j * iv.log(2)
        L = iv.mpf([L.a, L.a])  # lower endpoint: tail is decreasing in L
        if L.b <= 0:
            return iv.mpf(1)
        n = j - 1
        if L.a > 2 * n + 2:
            # terms grow up to r = n; geometric backward ratio r/L <= n/L
            if n == 0:
                log_top = iv.mpf(0)
            else:
                # Robbins: ln n! >= n ln n - n + ln(2 pi n)/2
                log_top = n * iv.log(L) - (n * iv.log(n) - n + iv.log(2 * iv.pi * n) / 2)
            return iv.exp(-L + log_top) / (1 - n / L)
        term = iv.mpf(1)
        total = iv.mpf(1)
        for r in range(1, j):
            term = term * L / r
            total = total + term
        return iv.exp(-L) * total

    lo, hi = iv_eval(tail, bits)
    return min(hi, Fraction(1))
