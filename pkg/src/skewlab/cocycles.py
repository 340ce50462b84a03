"""Trigonometric cocycles over rotations and linear flows.

A cocycle here is a finite trigonometric polynomial summed along orbits
of a base translation. Both time axes admit closed forms: over a
rotation the Birkhoff sum of a single cosine collapses to a Dirichlet
envelope times a carrier, and over a linear flow the time integral is
elementary. All one-step sums and integrals route through those closed
forms, so evaluation cost is independent of the time argument and no
precision is lost to term-by-term accumulation.

The envelope divides by sin(pi * frac(k . alpha)). For the resonant
ladders built by small_divisor_builder that divisor sits within 1e-12
of zero, which is exactly why phases are reduced through Fraction and
folded before the one float rounding (see numerics.sinpi_frac).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import ConstructionError, UsageError
from .numerics import cospi_frac, dyadic, frac1, sinpi_frac
from .torus import FLOW, ROTATION, BaseSystem, TorusPoint, act

GENERATOR = "GeneratorFunction"
FLOW_GENERATOR = "FlowGenerator"


@dataclass(frozen=True)
class TrigTerm:
    """One cosine term amp * cos(2 pi (freq . x + phase))."""

    freq: tuple[int, ...]
    amplitude: float
    phase: float = 0.0

    def __post_init__(self):
        freq = tuple(int(k) for k in self.freq)
        object.__setattr__(self, "freq", freq)
        if not freq or all(k == 0 for k in freq):
            raise ConstructionError("trig term needs a nonzero frequency")
        if not math.isfinite(self.amplitude) or not math.isfinite(self.phase):
            raise ConstructionError("trig term coefficients must be finite")


@dataclass(frozen=True)
class CocycleSpec:
    """Finite trig polynomial generator attached to a base translation."""

    base: BaseSystem
    terms: tuple[TrigTerm, ...]
    mode: str

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if self.mode not in (GENERATOR, FLOW_GENERATOR):
            raise ConstructionError(f"unknown cocycle mode {self.mode!r}")
        want = ROTATION if self.mode == GENERATOR else FLOW
        if self.base.kind != want:
            raise ConstructionError(
                f"mode {self.mode} requires a {want} base, "
                f"got {self.base.kind}")
        for term in self.terms:
            if len(term.freq) != self.base.dim:
                raise ConstructionError(
                    f"frequency {term.freq} does not match base dimension "
                    f"{self.base.dim}")
        if self.mode == FLOW_GENERATOR:
            vec = self.base.exact_vector()
            for term in self.terms:
                dot = sum(k * v for k, v in zip(term.freq, vec))
                if dot == 0:
                    raise ConstructionError(
                        f"frequency {term.freq} is orthogonal to the flow "
                        "direction; the integral has no bounded closed form")


@lru_cache(maxsize=128)
def _rotation_data(spec: CocycleSpec):
    """Per-term exact phase steps psi = frac(freq . alpha) and divisors."""
    alpha = spec.base.exact_vector()
    rows = []
    for term in spec.terms:
        psi = frac1(sum(k * a for k, a in zip(term.freq, alpha)))
        rows.append((term, psi, sinpi_frac(psi), dyadic(term.phase)))
    return tuple(rows)


@lru_cache(maxsize=128)
def _flow_data(spec: CocycleSpec):
    """Per-term flow frequencies freq . v (nonzero by construction)."""
    vec = spec.base.exact_vector()
    rows = []
    for term in spec.terms:
        kv = float(sum(k * v for k, v in zip(term.freq, vec)))
        rows.append((term, kv))
    return tuple(rows)


def _require_point(spec: CocycleSpec, x: TorusPoint):
    if x.dim != spec.base.dim:
        raise UsageError(
            f"point dimension {x.dim} does not match base {spec.base.dim}")


def _require_integer_time(time) -> int:
    if isinstance(time, bool) or not isinstance(time, (int, np.integer)):
        raise UsageError(
            f"discrete cocycles take integer times, got {time!r}")
    return int(time)


def evaluate(spec: CocycleSpec, time, x: TorusPoint) -> float:
    """Cocycle value at (time, x) through the closed forms.

    Rotation phases are reduced exactly, so the value keeps full relative
    precision even when the Dirichlet divisor is ~1e-12 and the result is
    ~1e9; flow arguments stay small enough for plain float.
    """
    _require_point(spec, x)
    if spec.mode == GENERATOR:
        n = _require_integer_time(time)
        if n == 0:
            return 0.0
        xq = x.exact_coords()
        total = 0.0
        for term, psi, sin_psi, phase_fr in _rotation_data(spec):
            theta0 = sum(k * c for k, c in zip(term.freq, xq)) + phase_fr
            if sin_psi == 0.0:
                total += term.amplitude * n * cospi_frac(2 * theta0)
                continue
            env = sinpi_frac(n * psi) / sin_psi
            carrier = cospi_frac(2 * theta0 + (n - 1) * psi)
            total += term.amplitude * env * carrier
        return total

    t = float(time)
    if t == 0.0:
        return 0.0
    total = 0.0
    for term, kv in _flow_data(spec):
        theta = sum(k * c for k, c in zip(term.freq, x.coords)) + term.phase
        half = math.pi * kv * t
        total += (term.amplitude * math.cos(2 * math.pi * theta + half)
                  * math.sin(half) / (math.pi * kv))
    return total


def sweep_values(spec: CocycleSpec, time, positions: np.ndarray) -> np.ndarray:
    """Vectorised evaluate over many base points at one fixed time.

    Rotation carrier phases freq . x are formed in extended precision, so
    even frequencies ~1e11 keep the phase error below 1e-7; for exact
    per-point values at a handful of witnesses use evaluate instead.
    """
    pos = np.asarray(positions, dtype=np.float64)
    if pos.ndim == 1:
        pos = pos[:, None]
    if pos.shape[1] != spec.base.dim:
        raise UsageError(
            f"position array dimension {pos.shape[1]} does not match base "
            f"{spec.base.dim}")
    total = np.zeros(pos.shape[0])
    if spec.mode == GENERATOR:
        n = _require_integer_time(time)
        if n == 0:
            return total
        wide = pos.astype(np.longdouble)
        for term, psi, sin_psi, phase_fr in _rotation_data(spec):
            acc = np.zeros(pos.shape[0], dtype=np.longdouble)
            for k, col in zip(term.freq, wide.T):
                if k:
                    acc += k * col
            if sin_psi == 0.0:
                ph = np.mod(acc + np.longdouble(float(phase_fr)), 1.0)
                total += (term.amplitude * n
                          * np.cos(2 * np.pi * ph.astype(np.float64)))
                continue
            env = sinpi_frac(n * psi) / sin_psi
            const = frac1(phase_fr + (n - 1) * psi / 2)
            ph = np.mod(acc + np.longdouble(float(const)), 1.0)
            total += (term.amplitude * env
                      * np.cos(2 * np.pi * ph.astype(np.float64)))
        return total

    t = float(time)
    if t == 0.0:
        return total
    for term, kv in _flow_data(spec):
        theta = pos @ np.array(term.freq, dtype=np.float64) + term.phase
        half = math.pi * kv * t
        total += (term.amplitude * math.sin(half) / (math.pi * kv)
                  * np.cos(2 * np.pi * theta + half))
    return total


def flow_profile(spec: CocycleSpec, m: TorusPoint, ts: np.ndarray) -> np.ndarray:
    """Vectorised evaluate over many times at one fixed flow start."""
    if spec.mode != FLOW_GENERATOR:
        raise UsageError("flow_profile needs a flow-integrated cocycle")
    _require_point(spec, m)
    ts = np.asarray(ts, dtype=np.float64)
    total = np.zeros_like(ts)
    for term, kv in _flow_data(spec):
        theta = sum(k * c for k, c in zip(term.freq, m.coords)) + term.phase
        half = math.pi * kv * ts
        total += (term.amplitude * np.cos(2 * math.pi * theta + half)
                  * np.sin(half) / (math.pi * kv))
    return total


def check_identity(cocycle, samples: int, seed: int) -> float:
    """Largest cocycle-identity residual over random (times, point) draws.

    Accepts anything exposing .base, .mode and optionally .evaluate, so
    shifted cocycles and test doubles run through the same harness.
    """
    base = cocycle.base
    mode = cocycle.mode
    if hasattr(cocycle, "evaluate"):
        value = cocycle.evaluate
    else:
        def value(time, x):
            return evaluate(cocycle, time, x)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    worst = 0.0
    for _ in range(samples):
        if mode == GENERATOR:
            n = int(rng.integers(-1000, 1001))
            m = int(rng.integers(-1000, 1001))
        else:
            n = float(rng.uniform(-100, 100))
            m = float(rng.uniform(-100, 100))
        x = TorusPoint(tuple(rng.uniform(0, 1, base.dim)))
        lhs = value(n + m, x)
        rhs = value(n, x) + value(m, act(base, n, x))
        worst = max(worst, abs(lhs - rhs))
    return worst


@dataclass(frozen=True, eq=False)
class TransferTable:
    """Sampled transfer function b on a uniform circle grid.

    values[j] is b((j + offset) / size); interpolation is periodic
    linear. Tables come out of coboundary solvers and feed cohomologous
    shifts and fiber-coordinate changes.
    """

    values: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.size < 2:
            raise ConstructionError("transfer table needs a 1-d grid")
        object.__setattr__(self, "values", vals)

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def spacing(self) -> float:
        return 1.0 / self.values.size

    def grid(self) -> np.ndarray:
        return (np.arange(self.size) + self.offset) / self.size

    @classmethod
    def from_function(cls, fn, size: int, offset: float = 0.0):
        xs = (np.arange(size) + offset) / size
        return cls(values=np.array([float(fn(x)) for x in xs]),
                   offset=offset)

    def interp(self, x):
        """Periodic linear interpolation at x (scalar or array)."""
        pos = np.mod(np.asarray(x, dtype=np.float64) - self.offset / self.size,
                     1.0) * self.size
        idx = np.floor(pos).astype(np.int64) % self.size
        frac = pos - np.floor(pos)
        nxt = (idx + 1) % self.size
        out = (1.0 - frac) * self.values[idx] + frac * self.values[nxt]
        if np.isscalar(x) or np.ndim(x) == 0:
            return float(out)
        return out


@dataclass(frozen=True, eq=False)
class ShiftedCocycle:
    """Cocycle moved within its cohomology class by a transfer table.

    evaluate(n, x) = f(n, x) + b(T^n x) - b(x); the shift never changes
    the class, so recurrence classifications must agree across shifts.
    """

    spec: CocycleSpec
    table: TransferTable

    def __post_init__(self):
        if self.spec.base.dim != 1:
            raise UsageError(
                "transfer tables are circle grids; shifts need a 1-d base")

    @property
    def base(self) -> BaseSystem:
        return self.spec.base

    @property
    def mode(self) -> str:
        return self.spec.mode

    def evaluate(self, time, x: TorusPoint) -> float:
        moved = act(self.base, time, x)
        return (evaluate(self.spec, time, x)
                + self.table.interp(moved.coords[0])
                - self.table.interp(x.coords[0]))

    def sweep_values(self, time, positions: np.ndarray) -> np.ndarray:
        pos = np.asarray(positions, dtype=np.float64)
        step = float(frac1(self.base.exact_vector()[0] * _as_int(time)))
        moved = np.mod(pos + step, 1.0)
        return (sweep_values(self.spec, time, pos)
                + self.table.interp(moved) - self.table.interp(pos))


def _as_int(time) -> int:
    return _require_integer_time(time)


def cohomologous_shift(spec: CocycleSpec, table: TransferTable) -> ShiftedCocycle:
    """Attach a transfer table as a coboundary correction to spec."""
    if spec.mode != GENERATOR:
        raise UsageError("cohomologous shifts are defined for discrete time")
    return ShiftedCocycle(spec=spec, table=table)


@dataclass(frozen=True)
class BuilderRung:
    level: int
    p: int
    q: int
    gap: float
    amplitude: float
    coefficient: float


@dataclass(frozen=True)
class BuilderResult:
    """Resonant ladder cocycle plus the arithmetic that selected it."""

    spec: CocycleSpec
    rungs: tuple[BuilderRung, ...]

    @property
    def coefficients(self) -> list[float]:
        return [r.coefficient for r in self.rungs]

    def provenance_lines(self) -> list[str]:
        out = ["resonant ladder rungs (level, p/q, |q*base - p|, "
               "amplitude / (2 pi gap)):"]
        for r in self.rungs:
            out.append(
                f"  level {r.level}: q = {r.q}, gap = {r.gap:.6e}, "
                f"amplitude = {r.amplitude}, coefficient = "
                f"{r.coefficient:.6e}")
        return out


def small_divisor_builder(base: BaseSystem, levels: int,
                          decay: float) -> BuilderResult:
    """Stack denominators of the base constant into a resonant cocycle.

    Level j contributes decay**j * cos(2 pi q_j x) with q_j drawn from
    the stored convergent denominators, skipping any rung whose
    amplified coefficient amp / (2 sin(pi gap)) fails to grow; the
    resulting Birkhoff sums are bounded at no scale while the generator
    stays uniformly small.
    """
    if not isinstance(levels, int) or not 1 <= levels <= 20:
        raise UsageError(f"levels must be an integer in [1, 20], got {levels}")
    if not 0.0 < decay < 1.0:
        raise UsageError(f"decay must sit in (0, 1), got {decay}")
    if not base.convergents:
        raise UsageError(
            "builder needs a base with stored convergents; use a named "
            "constant from the registry")
    if base.kind == FLOW and base.dim != 2:
        raise UsageError("flow ladders are built over planar flows (1, beta)")

    rungs = []
    level = 1
    last = 0.0
    for conv in base.convergents:
        if conv.p == 0 or conv.gap_exact == 0:
            continue
        coefficient = (decay ** level) / (2 * math.pi * conv.gap)
        if coefficient <= last:
            continue
        rungs.append(BuilderRung(level=level, p=conv.p, q=conv.q,
                                 gap=conv.gap, amplitude=decay ** level,
                                 coefficient=coefficient))
        last = coefficient
        level += 1
        if level > levels:
            break
    if len(rungs) < levels:
        raise ConstructionError(
            f"only {len(rungs)} usable rungs among the stored convergents, "
            f"needed {levels}")

    if base.kind == ROTATION:
        terms = tuple(TrigTerm(freq=(r.q,), amplitude=r.amplitude)
                      for r in rungs)
        mode = GENERATOR
    else:
        terms = tuple(TrigTerm(freq=(-r.p, r.q), amplitude=r.amplitude)
                      for r in rungs)
        mode = FLOW_GENERATOR
    spec = CocycleSpec(base=base, terms=terms, mode=mode)
    return BuilderResult(spec=spec, rungs=tuple(rungs))


def rescale_to_sup(spec: CocycleSpec, bound: float) -> tuple[CocycleSpec, float]:
    """Scale all amplitudes so the generator's sup norm is at most bound.

    The certificate returned is the triangle-inequality sup estimate
    sum |amp| after scaling, which equals bound up to one rounding.
    """
    total = sum(abs(t.amplitude) for t in spec.terms)
    if total == 0:
        raise UsageError("cannot rescale a zero cocycle")
    scale = bound / total
    terms = tuple(TrigTerm(freq=t.freq, amplitude=t.amplitude * scale,
                           phase=t.phase) for t in spec.terms)
    out = CocycleSpec(base=spec.base, terms=terms, mode=spec.mode)
    certificate = sum(abs(t.amplitude) for t in terms)
    return out, certificate
