"""Shipped irrational constants with provenance and stored convergents.

Three named constants are registered: alpha_liouville (tiny continued
fraction tail, deep small divisors), sqrt2 (badly approximable, used as
the fiber direction), and golden (badly approximable with resonances at
every Fibonacci scale, used as the worked-example base). Each is stored
as the double-precision value plus the exact continued fraction of that
double, so convergent gaps |q*alpha - p| are integer-exact facts about
the number the code actually iterates with.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .numerics import cf_convergents, cf_terms, dyadic


@dataclass(frozen=True)
class Convergent:
    p: int
    q: int
    gap: float          # |q*value - p| of the stored double, rounded once
    gap_exact: Fraction


@dataclass(frozen=True)
class NamedConstant:
    name: str
    value: float
    provenance: str
    convergents: tuple[Convergent, ...]


def _expand(name: str, value: float, provenance: str,
            max_terms: int = 64) -> NamedConstant:
    fr = dyadic(value)
    convs = []
    for p, q in cf_convergents(cf_terms(fr, max_terms)):
        g = fr * q - p
        convs.append(Convergent(p=p, q=q, gap=float(abs(g)), gap_exact=abs(g)))
    return NamedConstant(name=name, value=value, provenance=provenance,
                         convergents=tuple(convs))


def _liouville_value() -> float:
    # value of [0; 10, 10^2, 10^4, 10^8, 10^16], rounded once to double
    v = Fraction(0)
    for a in (10 ** 16, 10 ** 8, 10 ** 4, 10 ** 2, 10):
        v = Fraction(1, a + v)
    return float(v)


ALPHA_LIOUVILLE = _expand(
    "alpha_liouville", _liouville_value(),
    "double rounding of [0; 10, 10^2, 10^4, 10^8, 10^16]")

SQRT2 = _expand("sqrt2", math.sqrt(2.0), "double rounding of 2**0.5")

GOLDEN = _expand("golden", 0.5 * (math.sqrt(5.0) - 1.0),
                 "double rounding of (sqrt(5)-1)/2")

REGISTRY: dict[str, NamedConstant] = {
    c.name: c for c in (ALPHA_LIOUVILLE, SQRT2, GOLDEN)
}


def lookup(name: str) -> NamedConstant:
    try:
        return REGISTRY[name]
    except KeyError:
        raise KeyError(f"unknown named constant {name!r}; "
                       f"known: {sorted(REGISTRY)}") from None
