import math

import numpy as np
import pytest

from fareyweb.farey import Frac
from fareyweb.lift import SINE, TWO_PI, BoundSide, FamilyParams
from fareyweb.rotation import (displacement_extrema, lock_status,
                               orbit_averages, rho_monotone, rot_interval)


def test_rho_rigid_rotation():
    enc = rho_monotone(lambda x: x + 1/3, tol=1e-6)
    assert enc.contains(1/3)
    assert enc.width <= 1.001e-6


def test_rho_fixed_point_family():
    # sin vanishes at 0, so a = 0 pins a fixed point and rho = 0
    enc = rho_monotone(lambda x: SINE.eval(FamilyParams(0.0, 1.0), x), tol=1e-4)
    assert enc.contains(0.0)


def test_rho_width_bound_and_cap():
    enc = rho_monotone(lambda x: x + 0.137, tol=1e-9, max_iter=10000)
    assert enc.iterations == 10000
    assert abs(enc.width - 2.0 / 10000) < 1e-12
    assert enc.contains(0.137)


def test_rho_rejects_non_monotone():
    with pytest.raises(ValueError):
        rho_monotone(lambda x: SINE.eval(FamilyParams(0.0, 1.8), x), tol=1e-3)


def test_rho_monotone_in_translation():
    encs = [rho_monotone(lambda x, a=a: SINE.bound_eval(FamilyParams(a, 1.6), BoundSide.LOWER, x),
                         tol=1e-4) for a in (0.1, 0.2, 0.3)]
    for e1, e2 in zip(encs, encs[1:]):
        assert e2.lo >= e1.lo - 1e-4


def test_rot_interval_invertible_is_degenerate():
    ri = rot_interval(FamilyParams(0.25, 0.5), tol=1e-4)
    assert ri.upper.hi - ri.lower.lo <= 2.1e-4


def test_rot_interval_translation_by_one():
    ri0 = rot_interval(FamilyParams(0.3, 1.6), tol=1e-4, snap=False)
    ri1 = rot_interval(FamilyParams(1.3, 1.6), tol=1e-4, snap=False)
    assert abs(ri1.lower.lo - ri0.lower.lo - 1.0) < 1e-9
    assert abs(ri1.upper.hi - ri0.upper.hi - 1.0) < 1e-9


def test_rot_interval_odd_symmetry():
    # conjugating by x -> -x negates rotation numbers and swaps the endpoints
    for a in (0.0, 0.21):
        ri_pos = rot_interval(FamilyParams(a, 1.9), tol=1e-5, snap=False)
        ri_neg = rot_interval(FamilyParams(-a, 1.9), tol=1e-5, snap=False)
        assert abs(ri_pos.lower.mid + ri_neg.upper.mid) < 1e-4
        assert abs(ri_pos.upper.mid + ri_neg.lower.mid) < 1e-4


def test_rot_interval_snaps_locked_origin():
    ri = rot_interval(FamilyParams(0.0, 2.0), tol=1e-4)
    assert ri.lower.exact == (0, 1)
    assert ri.upper.exact == (0, 1)
    assert ri.width == 0.0


def test_snap_requires_sign_certificate():
    # a around the 0/1 boundary: the enclosure may hug 0 but must not snap
    b = 0.5
    a_edge = b / TWO_PI  # exact right edge of the 0-locking interval
    ri = rot_interval(FamilyParams(a_edge + 1e-3, b), tol=1e-5)
    assert ri.lower.exact is None or ri.lower.exact != (0, 1)


def test_displacement_extrema_identity_map():
    ext = displacement_extrema(FamilyParams(0, 0), BoundSide.RAW, Frac(0, 1))
    assert abs(ext.minimum) < 1e-14 and abs(ext.maximum) < 1e-14


def test_displacement_extrema_sine_min_at_three_quarters():
    b = 0.5
    ext = displacement_extrema(FamilyParams(b / TWO_PI, b), BoundSide.RAW, Frac(0, 1))
    assert abs(ext.minimum) < 1e-13
    assert abs(ext.argmin - 0.75) < 1e-6


def test_displacement_extrema_analytic_amplitudes():
    ext = displacement_extrema(FamilyParams(0, 1), BoundSide.RAW, Frac(0, 1))
    assert abs(ext.minimum + 1 / TWO_PI) < 1e-13
    assert abs(ext.maximum - 1 / TWO_PI) < 1e-13
    assert abs(ext.argmin - 0.75) < 1e-6
    assert abs(ext.argmax - 0.25) < 1e-6


def test_displacement_extrema_offset_translates():
    base = displacement_extrema(FamilyParams(0.3, 1.2), BoundSide.LOWER, Frac(1, 2))
    shifted = displacement_extrema(FamilyParams(1.3, 1.2), BoundSide.LOWER,
                                   Frac(1, 2), offset=1)
    assert abs(base.minimum - shifted.minimum) < 1e-10
    assert abs(base.maximum - shifted.maximum) < 1e-10


def test_displacement_cap():
    with pytest.raises(ValueError):
        displacement_extrema(FamilyParams(0, 1), BoundSide.RAW, Frac(1, 65), cap=64)


def test_lock_status_examples():
    assert lock_status(FamilyParams(0.0, 0.5), Frac(0, 1)).state == "locked"
    assert lock_status(FamilyParams(0.25, 0.0), Frac(0, 1)).state == "not_locked"
    st = lock_status(FamilyParams(0.5, 1.0), Frac(1, 2))
    assert st.state == "locked" and st.frac == Frac(1, 2)


def test_lock_status_interval_matches_analytic_edges():
    b = 0.5
    edge = b / TWO_PI
    assert lock_status(FamilyParams(edge - 1e-6, b), Frac(0, 1)).state == "locked"
    assert lock_status(FamilyParams(edge + 1e-6, b), Frac(0, 1)).state == "not_locked"
    assert lock_status(FamilyParams(edge, b), Frac(0, 1)).state == "uncertain"


def test_iterate_against_high_precision_reference():
    # the reduced-argument iteration tracks a 50-digit orbit to ~1e-10 over
    # a thousand steps for these mildly expanding parameters
    import mpmath
    mpmath.mp.dps = 50
    rng = np.random.default_rng(17)
    for _ in range(10):
        a = float(rng.uniform(-0.5, 1.5))
        b = float(rng.uniform(0.0, 1.05))
        x0 = float(rng.uniform(0.0, 1.0))
        n = 1000
        got = SINE.iterate(FamilyParams(a, b), BoundSide.RAW, x0, n)
        x = mpmath.mpf(x0)
        amp = mpmath.mpf(b) / (2 * mpmath.pi)
        for _ in range(n):
            x = x + mpmath.mpf(a) + amp * mpmath.sin(2 * mpmath.pi * x)
        assert abs(got - float(x)) < 1e-9


def test_fact4_containment_sampled():
    # quick version of the acceptance criterion: orbit averages stay inside
    rng = np.random.default_rng(42)
    for _ in range(5):
        params = FamilyParams(rng.uniform(-0.5, 1.5), rng.uniform(1.0, 2.0) + 1e-9)
        ri = rot_interval(params, tol=1e-4)
        starts = rng.uniform(0.0, 1.0, 16)
        avgs = orbit_averages(params, starts, 3000)
        assert avgs.min() >= ri.lower.lo - 1e-3
        assert avgs.max() <= ri.upper.hi + 1e-3
