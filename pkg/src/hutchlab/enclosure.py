"""Rational enclosures of sin(2*pi*x) for exact cell rasterization.

The engine never compares floating-point numbers, so the one transcendental
map it rasterizes (the circle homeomorphism x -> x + mu*sin(2*pi*x)) is
evaluated with directed-rounded rational arithmetic: a hard-coded rational
enclosure of pi plus an alternating Taylor series give an interval [lo, hi]
containing sin(2*pi*x) whose width is far below any cell boundary gap.  The
finitely many arguments where sin(2*pi*x) is rational are returned exactly so
cell-boundary hits are decided, not guessed.
"""

from __future__ import annotations

import math
from fractions import Fraction

# 37 decimal digits of pi, truncated, so PI_LO < pi < PI_HI.
PI_LO = Fraction(31415926535897932384626433832795028841, 10**37)
PI_HI = PI_LO + Fraction(2, 10**37)

_GRID = 1 << 160  # outward-rounding grid keeps denominators bounded
_EPS = Fraction(1, 1 << 140)

# sin(2*pi*t/12) for the t where it is rational (Niven's theorem).
_EXACT_TWELFTHS = {
    0: Fraction(0),
    1: Fraction(1, 2),
    3: Fraction(1),
    5: Fraction(1, 2),
    6: Fraction(0),
    7: Fraction(-1, 2),
    9: Fraction(-1),
    11: Fraction(-1, 2),
}


def _down(q: Fraction) -> Fraction:
    return Fraction(math.floor(q * _GRID), _GRID)


def _up(q: Fraction) -> Fraction:
    return Fraction(math.ceil(q * _GRID), _GRID)


def _sin_series(theta: Fraction) -> tuple[Fraction, Fraction]:
    """Bounds for sin(theta) with 0 <= theta <= 1.6 (terms then decrease)."""
    theta2 = theta * theta
    term = theta  # upper bound on the current Taylor term
    s_lo = Fraction(0)
    s_hi = Fraction(0)
    k = 0
    sign = 1
    while True:
        if sign > 0:
            s_lo = _down(s_lo + term)
            s_hi = _up(s_hi + term)
        else:
            s_lo = _down(s_lo - term)
            s_hi = _up(s_hi - term)
        k += 1
        term = _up(term * theta2 / ((2 * k) * (2 * k + 1)))
        sign = -sign
        if term < _EPS:
            # alternating remainder is bounded by the first omitted term
            return _down(s_lo - term), _up(s_hi + term)


def _sin_quarter(x: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure of sin(2*pi*x) for x in (0, 1/4)."""
    theta_lo = _down(2 * PI_LO * x)
    theta_hi = _up(2 * PI_HI * x)
    a_lo, a_hi = _sin_series(theta_lo)
    b_lo, b_hi = _sin_series(theta_hi)
    lo = min(a_lo, b_lo)
    if theta_lo < PI_HI / 2 < theta_hi:
        hi = Fraction(1)  # the peak may sit inside the argument interval
    else:
        hi = max(a_hi, b_hi)
    return max(lo, Fraction(-1)), min(hi, Fraction(1))


def sin2pi_bounds(x: Fraction) -> tuple[Fraction, Fraction]:
    """Enclosure [lo, hi] of sin(2*pi*x); exact (lo == hi) where possible."""
    x = Fraction(x) % 1
    twelfth = x * 12
    if twelfth.denominator == 1 and twelfth.numerator in _EXACT_TWELFTHS:
        v = _EXACT_TWELFTHS[twelfth.numerator]
        return v, v
    if x > Fraction(1, 2):
        lo, hi = sin2pi_bounds(x - Fraction(1, 2))
        return -hi, -lo
    if x > Fraction(1, 4):
        x = Fraction(1, 2) - x
    return _sin_quarter(x)


def is_exact(bounds: tuple[Fraction, Fraction]) -> bool:
    return bounds[0] == bounds[1]
