"""Torus phase points, the two base actions, and the max-circle metric.

A BaseSystem is either a discrete rotation (a Z-action x -> x + n*alpha
mod 1 coordinatewise) or a linear flow (an R-action m -> m + t*v mod 1).
Both are isometries of the max-of-circle-distances metric, which is what
makes the downstream isometric-extension checks meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import Convergent
from .errors import UsageError
from .numerics import dyadic, frac1, frac1_float, rotation_positions


@dataclass(frozen=True)
class TorusPoint:
    """A point on the torus, optionally carrying exact coordinates.

    The float coords are the public face; exact, when present, holds the
    same coordinates as rationals so that repeated group actions do not
    round. Cocycle evaluation prefers the exact channel: frequencies of
    order 1e11 would amplify a single float rounding of the position
    into phase noise around 1e-4.
    """

    coords: tuple[float, ...]
    exact: tuple[Fraction, ...] | None = field(
        default=None, compare=False, repr=False)

    def __post_init__(self):
        if len(self.coords) < 1:
            raise UsageError("TorusPoint needs dimension >= 1")
        reduced = tuple(c % 1.0 for c in self.coords)
        object.__setattr__(self, "coords", reduced)
        if self.exact is not None and len(self.exact) != len(self.coords):
            raise UsageError("exact coordinates do not match dimension")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def exact_coords(self) -> tuple[Fraction, ...]:
        if self.exact is not None:
            return self.exact
        return tuple(dyadic(c) for c in self.coords)


ROTATION = "DiscreteRotation"
FLOW = "LinearFlow"


@dataclass(frozen=True)
class BaseSystem:
    """A minimal torus action.

    For a DiscreteRotation, vector is the rotation vector; for a
    LinearFlow it is the direction vector. convergents, when present,
    are the stored continued-fraction convergents of the designated
    irrational (the rotation number for one-dimensional rotations, the
    slope beta for (1, beta) flows); the small-divisor builder requires
    them.
    """
    kind: str
    vector: tuple[float, ...]
    provenance: str = ""
    convergents: tuple[Convergent, ...] = field(default=())

    def __post_init__(self):
        if self.kind not in (ROTATION, FLOW):
            raise UsageError(f"unknown base kind {self.kind!r}")
        if len(self.vector) < 1:
            raise UsageError("base needs dimension >= 1")

    @property
    def dim(self) -> int:
        return len(self.vector)

    def exact_vector(self) -> tuple[Fraction, ...]:
        return tuple(dyadic(v) for v in self.vector)


def act(base: BaseSystem, time, x: TorusPoint) -> TorusPoint:
    """Apply the action for the given (integer or real) time."""
    if x.dim != base.dim:
        raise UsageError(f"point dim {x.dim} != base dim {base.dim}")
    if base.kind == ROTATION:
        if isinstance(time, float) and not time.is_integer():
            raise UsageError("rotation time must be an integer")
        n = int(time)
        # exact reduction per coordinate: x + n*alpha is a dyadic rational
        moved = tuple(
            frac1(c + dyadic(a) * n)
            for c, a in zip(x.exact_coords(), base.vector))
        return TorusPoint(tuple(float(c) for c in moved), exact=moved)
    t = float(time)
    coords = tuple((c + t * v) % 1.0 for c, v in zip(x.coords, base.vector))
    return TorusPoint(coords)


def distance(x: TorusPoint, y: TorusPoint) -> float:
    """Max over coordinates of the circle distance."""
    if x.dim != y.dim:
        raise UsageError(f"dimension mismatch {x.dim} != {y.dim}")
    best = 0.0
    for a, b in zip(x.coords, y.coords):
        d = abs(a - b)
        d = min(d, 1.0 - d)
        if d > best:
            best = d
    return best


def max_orbit_gap(base: BaseSystem, n_points: int, coord: int = 0,
                  chunk: int = 2_000_000) -> float:
    """Largest gap between consecutive orbit points of 0 on one circle.

    Density probe for rotations: the orbit {frac(n * alpha)} for
    n = 0..n_points-1 is sorted and the biggest circular gap returned.
    """
    if base.kind != ROTATION:
        raise UsageError("orbit gap probe is for rotations")
    alpha = dyadic(base.vector[coord])
    parts = [np.array([0.0])]
    for start in range(1, n_points, chunk):
        count = min(chunk, n_points - start)
        parts.append(rotation_positions(alpha, Fraction(0), start, count, 1))
    pts = np.sort(np.concatenate(parts))
    gaps = np.diff(pts)
    wrap = 1.0 - pts[-1] + pts[0]
    return float(max(gaps.max(), wrap))
