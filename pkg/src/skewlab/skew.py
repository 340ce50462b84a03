"""Skew product actions, right translation, and orbit sampling.

The plain skew product acts on X x R by (x, a) -> (Tx, a + f(T, x)).
Attaching a Rokhlin fiber drives an auxiliary linear flow on M through
the cocycle value, and the perturbed variant additionally feeds that
value into a second cocycle living on the fiber:

    (x, m, a) -> (Tx, phi^{f}(m), a + f + g(f, m)).

The perturbation must come with a sup-norm certificate: amplitudes
summing to at most 1/4 give |g(t, m)| <= |t|/4, so the fiber coordinate
t + g(t, m) keeps slope within [3/4, 5/4] and the decomposition
machinery downstream stays honest.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycles import FLOW_GENERATOR, GENERATOR, CocycleSpec, evaluate
from .errors import ConstructionError, UsageError
from .numerics import KahanSum
from .torus import FLOW, ROTATION, BaseSystem, TorusPoint, act

SUP_CERTIFICATE_BOUND = 0.25


@dataclass(frozen=True)
class RokhlinFiber:
    """Auxiliary fiber flow, optionally with a perturbation cocycle.

    certificate is the triangle-inequality sup bound on the perturbation
    generator, computed here and required to stay at or below 1/4.
    """

    fiber_flow: BaseSystem
    perturbation: CocycleSpec | None = None
    certificate: float | None = None

    def __post_init__(self):
        if self.fiber_flow.kind != FLOW:
            raise ConstructionError("the fiber must carry a linear flow")
        if self.perturbation is None:
            return
        if self.perturbation.mode != FLOW_GENERATOR:
            raise ConstructionError(
                "the perturbation must integrate along the fiber flow")
        if self.perturbation.base != self.fiber_flow:
            raise ConstructionError(
                "the perturbation lives over a different flow")
        cert = sum(abs(t.amplitude) for t in self.perturbation.terms)
        if cert > SUP_CERTIFICATE_BOUND + 1e-12:
            raise ConstructionError(
                f"perturbation sup bound {cert:.6f} exceeds "
                f"{SUP_CERTIFICATE_BOUND}; rescale the generator first")
        object.__setattr__(self, "certificate", cert)


@dataclass(frozen=True)
class SkewSystem:
    base: BaseSystem
    cocycle: CocycleSpec
    rokhlin: RokhlinFiber | None = None

    def __post_init__(self):
        if self.cocycle.base != self.base:
            raise ConstructionError(
                "the cocycle must be defined over the system's base")
        want = GENERATOR if self.base.kind == ROTATION else FLOW_GENERATOR
        if self.cocycle.mode != want:
            raise ConstructionError(
                f"cocycle mode {self.cocycle.mode} does not match the "
                f"base kind {self.base.kind}")


@dataclass(frozen=True)
class SkewPoint:
    """A point (x, a) or (x, m, a) of the (extended) skew product."""

    x: TorusPoint
    a: float
    m: TorusPoint | None = None


def _check_shape(sys: SkewSystem, p: SkewPoint):
    if (p.m is None) != (sys.rokhlin is None):
        raise UsageError(
            "point shape does not match the system (fiber coordinate "
            + ("missing" if p.m is None else "unexpected") + ")")
    if p.m is not None and p.m.dim != sys.rokhlin.fiber_flow.dim:
        raise UsageError("fiber coordinate dimension mismatch")


def fiber_increment(sys: SkewSystem, time, p: SkewPoint) -> float:
    """The a-coordinate increment f(time,x) (+ g(f, m) when perturbed)."""
    df = evaluate(sys.cocycle, time, p.x)
    if sys.rokhlin is not None and sys.rokhlin.perturbation is not None:
        return df + evaluate(sys.rokhlin.perturbation, df, p.m)
    return df


def skew_act(sys: SkewSystem, time, p: SkewPoint) -> SkewPoint:
    """Apply the skew product action for the given time in one shot."""
    _check_shape(sys, p)
    df = evaluate(sys.cocycle, time, p.x)
    x2 = act(sys.base, time, p.x)
    if sys.rokhlin is None:
        return SkewPoint(x=x2, a=p.a + df)
    m2 = act(sys.rokhlin.fiber_flow, df, p.m)
    da = df
    if sys.rokhlin.perturbation is not None:
        da = df + evaluate(sys.rokhlin.perturbation, df, p.m)
    return SkewPoint(x=x2, a=p.a + da, m=m2)


def translate(p: SkewPoint, b: float) -> SkewPoint:
    """Right translation R_b: move only the fiber coordinate, by -b."""
    if b == 0.0:
        return p
    return SkewPoint(x=p.x, a=p.a - b, m=p.m)


def orbit(sys: SkewSystem, start: SkewPoint, schedule) -> list[SkewPoint]:
    """Sample the orbit of start at the requested times.

    Times are walked incrementally in sorted order (one base step per
    unit for rotations, one hop per schedule gap for flows) with the
    a-coordinate compensated, then reported back in schedule order.
    Forward and backward branches both start from time 0.
    """
    times = list(schedule)
    if not times:
        raise UsageError("orbit needs a nonempty schedule")
    discrete = sys.base.kind == ROTATION
    for t in times:
        if discrete and not float(t).is_integer():
            raise UsageError(f"integer schedule required, got {t!r}")

    fiber = sys.rokhlin.fiber_flow if sys.rokhlin else None
    pert = sys.rokhlin.perturbation if sys.rokhlin else None

    def step(p: SkewPoint, acc: KahanSum, dt) -> SkewPoint:
        df = evaluate(sys.cocycle, dt, p.x)
        x2 = act(sys.base, dt, p.x)
        if fiber is None:
            return SkewPoint(x=x2, a=acc.add(df))
        m2 = act(fiber, df, p.m)
        da = df + evaluate(pert, df, p.m) if pert else df
        return SkewPoint(x=x2, a=acc.add(da), m=m2)

    out: dict = {}
    for branch in (sorted(t for t in times if t >= 0),
                   sorted((t for t in times if t < 0), reverse=True)):
        if not branch:
            continue
        sign = 1 if branch[0] >= 0 else -1
        current = start
        acc = KahanSum(start.a)
        now = 0
        for target in branch:
            if discrete:
                while now != target:
                    current = step(current, acc, sign)
                    now += sign
            elif target != now:
                current = step(current, acc, target - now)
                now = target
            out[target] = current
    return [out[t] for t in times]
