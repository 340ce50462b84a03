"""Exact phase reduction and compensated accumulation kernels.

Every double is a dyadic rational, so reductions like frac(q * alpha) and
frac(n * psi) are integer computations when routed through Fraction. The
kernels here do exactly that: phases are anchored exactly (one rounding at
the end), and only short in-chunk ramps run in plain float64, keeping the
per-point phase error near machine epsilon even at n ~ 1e7 with
frequencies ~ 1e7. Fiber coordinates accumulate through compensated sums.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np


def dyadic(x: float) -> Fraction:
    """Exact rational value of a double."""
    return Fraction(x)


def frac1(fr: Fraction) -> Fraction:
    """fr mod 1, exactly, in [0, 1)."""
    return fr - (fr.numerator // fr.denominator)


def frac1_float(fr: Fraction) -> float:
    """float(fr mod 1) with a single final rounding."""
    return float(frac1(fr))


def frac2_float(fr: Fraction) -> float:
    """float(fr mod 2) with a single final rounding (sine argument period)."""
    half = fr / 2
    return float(2 * (half - (half.numerator // half.denominator)))


def circle_dist_float(fr: Fraction) -> float:
    """Distance from fr to the nearest integer, exactly reduced."""
    r = frac1(fr)
    return float(min(r, 1 - r))


def sinpi_frac(fr: Fraction) -> float:
    """sin(pi * fr) at full relative precision for exact rational fr.

    The argument is folded exactly into [-1/2, 1/2] before the single
    float rounding, so values near roots of the sine keep all their
    significant digits. Plain math.sin(math.pi * float(fr)) loses five
    or six digits once fr sits within 1e-12 of an odd integer, and the
    small-divisor envelopes divide by exactly such values.
    """
    u = frac2(fr)
    if u > Fraction(3, 2):
        u = u - 2
    elif u > Fraction(1, 2):
        u = 1 - u
    return math.sin(math.pi * float(u))


def cospi_frac(fr: Fraction) -> float:
    """cos(pi * fr) via the same exact folding as sinpi_frac."""
    return sinpi_frac(Fraction(1, 2) - fr)


def frac2(fr: Fraction) -> Fraction:
    """fr mod 2, exactly, in [0, 2)."""
    half = fr / 2
    return 2 * (half - (half.numerator // half.denominator))


def cf_terms(fr: Fraction, max_terms: int = 64) -> list[int]:
    """Continued fraction terms of an exact rational (terminates)."""
    terms = []
    p, q = fr.numerator, fr.denominator
    a0 = p // q
    terms.append(a0)
    p -= a0 * q
    while p != 0 and len(terms) < max_terms:
        p, q = q, p
        a = p // q
        terms.append(a)
        p -= a * q
    return terms


def cf_convergents(terms: list[int]) -> list[tuple[int, int]]:
    """Convergents p_j/q_j of a continued fraction, including the 0th."""
    out = []
    p0, q0 = 1, 0
    p1, q1 = terms[0], 1
    out.append((p1, q1))
    for a in terms[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out


def phase_ramp(anchor: Fraction, step: float, count: int) -> np.ndarray:
    """Phases frac(anchor + k*step) for k = 0..count-1.

    The anchor is reduced exactly; the ramp itself is float64, so the
    drift across the chunk is about count * eps. Callers chunk long
    ramps and re-anchor at every chunk boundary.
    """
    base = frac1_float(anchor)
    return np.mod(base + np.arange(count, dtype=np.float64) * step, 1.0)


def rotation_positions(alpha: Fraction, x0: Fraction, n0: int, count: int,
                       sign: int) -> np.ndarray:
    """Positions frac(x0 + (n0 + sign*k) * alpha) for k = 0..count-1."""
    anchor = x0 + alpha * n0
    return phase_ramp(anchor, sign * frac1_float(alpha), count)


class KahanSum:
    """Scalar compensated accumulator for incremental orbit stepping."""

    __slots__ = ("value", "_c")

    def __init__(self, value: float = 0.0):
        self.value = value
        self._c = 0.0

    def add(self, term: float) -> float:
        y = term - self._c
        t = self.value + y
        self._c = (t - self.value) - y
        self.value = t
        return self.value


def blocked_cumsum(values: np.ndarray, carry: float) -> tuple[np.ndarray, float]:
    """Cumulative sum of one chunk on top of a long-double carry.

    Returns (absolute running sums as float64, updated carry). The carry
    stays in extended precision so the cross-chunk error does not grow
    with the number of chunks.
    """
    c = np.cumsum(values, dtype=np.float64)
    out = (np.longdouble(carry) + c.astype(np.longdouble)).astype(np.float64)
    new_carry = float(np.longdouble(carry) + np.longdouble(np.sum(values, dtype=np.longdouble)))
    return out, new_carry
