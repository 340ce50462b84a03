import math

import numpy as np

from skewlab.cocycles import (FLOW_GENERATOR, GENERATOR, CocycleSpec,
                              TrigTerm, evaluate, rescale_to_sup,
                              small_divisor_builder)
from skewlab.constants import lookup
from skewlab.errors import ConstructionError, UsageError
from skewlab.skew import (RokhlinFiber, SkewPoint, SkewSystem, orbit,
                          skew_act, translate)
from skewlab.torus import FLOW, ROTATION, BaseSystem, TorusPoint, act, distance


def golden_base():
    c = lookup("golden")
    return BaseSystem(kind=ROTATION, vector=(c.value,), provenance=c.name,
                      convergents=c.convergents)


def fiber_flow():
    c = lookup("sqrt2")
    return BaseSystem(kind=FLOW, vector=(1.0, c.value), provenance=c.name,
                      convergents=c.convergents)


def window_cocycle(base):
    return CocycleSpec(base=base, mode=GENERATOR, terms=(
        TrigTerm(freq=(377,), amplitude=0.07),
        TrigTerm(freq=(55,), amplitude=0.02)))


def perturbation(flow):
    built = small_divisor_builder(flow, levels=2, decay=0.5)
    spec, _ = rescale_to_sup(built.spec, 0.25)
    return spec


def fiber_extension_system():
    base = golden_base()
    return SkewSystem(base=base, cocycle=window_cocycle(base),
                      rokhlin=RokhlinFiber(fiber_flow=fiber_flow()))


def perturbed_system():
    base = golden_base()
    flow = fiber_flow()
    return SkewSystem(base=base, cocycle=window_cocycle(base),
                      rokhlin=RokhlinFiber(fiber_flow=flow,
                                           perturbation=perturbation(flow)))


def plain_system():
    base = golden_base()
    return SkewSystem(base=base, cocycle=window_cocycle(base))


BETA = lookup("sqrt2").value


# ---------- one-step definitions ----------

def test_single_step_plain():
    base = golden_base()
    sys = SkewSystem(base=base, cocycle=CocycleSpec(
        base=base, mode=GENERATOR, terms=(TrigTerm(freq=(1,), amplitude=1.0),)))
    rng = np.random.default_rng(5)
    for _ in range(100):
        x = float(rng.uniform(0, 1))
        a = float(rng.uniform(-3, 3))
        p = skew_act(sys, 1, SkewPoint(x=TorusPoint((x,)), a=a))
        assert abs(p.a - (a + math.cos(2 * math.pi * x))) < 1e-12
        assert distance(p.x, act(base, 1, TorusPoint((x,)))) < 1e-15


def test_time_zero_is_identity():
    for sys in (plain_system(), fiber_extension_system(), perturbed_system()):
        m = TorusPoint((0.2, 0.3)) if sys.rokhlin else None
        p = SkewPoint(x=TorusPoint((0.1,)), a=0.7, m=m)
        q = skew_act(sys, 0, p)
        assert q.a == p.a
        assert distance(q.x, p.x) == 0
        if m is not None:
            assert distance(q.m, p.m) == 0


def test_rokhlin_fiber_moves_by_cocycle_value():
    sys = fiber_extension_system()
    rng = np.random.default_rng(11)
    for _ in range(200):
        n = int(rng.integers(-2000, 2000))
        x = TorusPoint((float(rng.uniform(0, 1)),))
        m = TorusPoint(tuple(rng.uniform(0, 1, 2)))
        p = skew_act(sys, n, SkewPoint(x=x, a=0.0, m=m))
        df = evaluate(sys.cocycle, n, x)
        want = act(sys.rokhlin.fiber_flow, df, m)
        assert distance(p.m, want) < 1e-9
        assert abs(p.a - df) < 1e-9


def test_perturbed_fiber_coordinate_formula():
    sys = perturbed_system()
    g = sys.rokhlin.perturbation
    rng = np.random.default_rng(17)
    for _ in range(1000):
        n = int(rng.integers(-1000, 1001))
        x = TorusPoint((float(rng.uniform(0, 1)),))
        m = TorusPoint(tuple(rng.uniform(0, 1, 2)))
        p = skew_act(sys, n, SkewPoint(x=x, a=0.0, m=m))
        df = evaluate(sys.cocycle, n, x)
        want = df + evaluate(g, df, m)
        assert abs(p.a - want) < 1e-9


# ---------- group law and translation ----------

def test_group_law():
    rng = np.random.default_rng(23)
    for sys in (plain_system(), perturbed_system()):
        for _ in range(300):
            s = int(rng.integers(-500, 500))
            t = int(rng.integers(-500, 500))
            m = TorusPoint(tuple(rng.uniform(0, 1, 2))) if sys.rokhlin else None
            p = SkewPoint(x=TorusPoint((float(rng.uniform(0, 1)),)),
                          a=float(rng.uniform(-1, 1)), m=m)
            one = skew_act(sys, s + t, p)
            two = skew_act(sys, s, skew_act(sys, t, p))
            assert abs(one.a - two.a) < 1e-9
            assert distance(one.x, two.x) < 1e-9
            if m is not None:
                assert distance(one.m, two.m) < 1e-9


def test_translate_touches_only_fiber():
    p = SkewPoint(x=TorusPoint((0.4,)), a=1.25, m=TorusPoint((0.1, 0.9)))
    q = translate(p, 0.5)
    assert q.a == 0.75
    assert q.x is p.x and q.m is p.m
    assert translate(p, 0.0).a == p.a
    r = translate(translate(p, 0.3), -0.3)
    assert r.a == p.a


def test_translation_commutes_with_skew_action():
    rng = np.random.default_rng(29)
    sys = perturbed_system()
    worst = 0.0
    for _ in range(10_000):
        n = int(rng.integers(-100, 100))
        b = float(rng.uniform(-2, 2))
        p = SkewPoint(x=TorusPoint((float(rng.uniform(0, 1)),)),
                      a=float(rng.uniform(-1, 1)),
                      m=TorusPoint(tuple(rng.uniform(0, 1, 2))))
        lhs = skew_act(sys, n, translate(p, b))
        rhs = translate(skew_act(sys, n, p), b)
        worst = max(worst, abs(lhs.a - rhs.a), distance(lhs.x, rhs.x),
                    distance(lhs.m, rhs.m))
    assert worst < 1e-12


# ---------- orbits ----------

def test_orbit_trivial_schedule():
    sys = plain_system()
    start = SkewPoint(x=TorusPoint((0.0,)), a=0.0)
    pts = orbit(sys, start, [0])
    assert len(pts) == 1
    assert pts[0].a == start.a and distance(pts[0].x, start.x) == 0


def test_orbit_incremental_matches_direct():
    sys = plain_system()
    start = SkewPoint(x=TorusPoint((0.0,)), a=0.0)
    n = 100_000
    pts = orbit(sys, start, [n])
    direct = skew_act(sys, n, start)
    assert abs(pts[0].a - direct.a) < 1e-6
    assert distance(pts[0].x, direct.x) < 1e-9


def test_orbit_negative_times_match_direct():
    sys = plain_system()
    start = SkewPoint(x=TorusPoint((0.25,)), a=0.5)
    sched = [-5000, -7, 0, 3, 20_000]
    pts = orbit(sys, start, sched)
    for t, p in zip(sched, pts):
        direct = skew_act(sys, t, start)
        assert abs(p.a - direct.a) < 1e-7
        assert distance(p.x, direct.x) < 1e-9


def test_orbit_fiber_extension_stays_on_leaf():
    # fiber coordinates of the extension move along the line
    # (y0 + a, z0 + beta*a); drift must match the accumulated sum
    sys = fiber_extension_system()
    y0, z0 = 0.2, 0.3
    start = SkewPoint(x=TorusPoint((0.0,)), a=0.0, m=TorusPoint((y0, z0)))
    sched = list(range(0, 50_001, 500))
    pts = orbit(sys, start, sched)

    def circ(u):
        r = u % 1.0
        return min(r, 1.0 - r)

    for p in pts:
        assert circ((p.m.coords[0] - y0) - p.a) < 1e-6
        assert circ((p.m.coords[1] - z0) - BETA * p.a) < 1e-6


def test_orbit_real_time_schedule():
    flow = fiber_flow()
    sys = SkewSystem(base=flow, cocycle=CocycleSpec(
        base=flow, mode=FLOW_GENERATOR,
        terms=(TrigTerm(freq=(1, 0), amplitude=0.5),)))
    start = SkewPoint(x=TorusPoint((0.1, 0.6)), a=0.0)
    sched = [0.0, 0.5, 1.75, -2.25, 100.0]
    pts = orbit(sys, start, sched)
    for t, p in zip(sched, pts):
        direct = skew_act(sys, t, start)
        assert abs(p.a - direct.a) < 1e-9
        assert distance(p.x, direct.x) < 1e-9


# ---------- construction guards ----------

def test_certificate_violation_rejected():
    flow = fiber_flow()
    big = CocycleSpec(base=flow, mode=FLOW_GENERATOR, terms=(
        TrigTerm(freq=(-1, 1), amplitude=0.3),))
    try:
        RokhlinFiber(fiber_flow=flow, perturbation=big)
    except ConstructionError:
        pass
    else:
        raise AssertionError("sup|A| > 1/4 perturbation accepted")


def test_certificate_recorded():
    fib = perturbed_system().rokhlin
    assert fib.certificate is not None
    assert abs(fib.certificate - 0.25) < 1e-12


def test_rokhlin_fiber_must_be_flow():
    try:
        RokhlinFiber(fiber_flow=golden_base())
    except ConstructionError:
        pass
    else:
        raise AssertionError("rotation accepted as fiber flow")


def test_point_shape_mismatch_rejected():
    sys = fiber_extension_system()
    try:
        skew_act(sys, 1, SkewPoint(x=TorusPoint((0.1,)), a=0.0))
    except UsageError:
        pass
    else:
        raise AssertionError("missing fiber coordinate accepted")
    try:
        skew_act(plain_system(), 1,
                 SkewPoint(x=TorusPoint((0.1,)), a=0.0,
                           m=TorusPoint((0.2, 0.3))))
    except UsageError:
        pass
    else:
        raise AssertionError("stray fiber coordinate accepted")


def test_mismatched_cocycle_base_rejected():
    base = golden_base()
    other = BaseSystem(kind=ROTATION, vector=(0.3333333333,))
    try:
        SkewSystem(base=base, cocycle=CocycleSpec(
            base=other, mode=GENERATOR,
            terms=(TrigTerm(freq=(1,), amplitude=1.0),)))
    except ConstructionError:
        pass
    else:
        raise AssertionError("cocycle over a different base accepted")
