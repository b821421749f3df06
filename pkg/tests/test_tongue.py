import pytest

from fareyweb.errors import TipNotFoundError
from fareyweb.farey import Frac
from fareyweb.lift import SINE, TWO_PI, BoundSide, FamilyParams
from fareyweb.rotation import displacement_extrema
from fareyweb.tongue import (boundary, locking_interval, section, tip_by_width,
                             trace)

HALF = Frac(1, 2)
ZERO = Frac(0, 1)


@pytest.mark.parametrize("b", [0.25, 0.5, 1.0, 1.7])
def test_phi_analytic_for_zero_tongue(b):
    assert abs(boundary("phi1", ZERO, b) - b / TWO_PI) < 1e-10
    assert abs(boundary("phi2", ZERO, b) + b / TWO_PI) < 1e-10


def test_psi_coincides_with_phi_when_invertible():
    for frac in (ZERO, HALF):
        for b in (0.4, 1.0):
            sec = section(frac, b)
            assert abs(sec.psi1 - sec.phi2) < 1e-10
            assert abs(sec.psi2 - sec.phi1) < 1e-10


def test_section_half_at_critical_line():
    sec = section(HALF, 1.0)
    assert sec.psi1 < 0.5 < sec.psi2
    assert sec.locking_width > 0.01


def test_section_orderings_above_critical():
    sec = section(HALF, 1.5)
    tol = 1e-9
    assert sec.phi2 <= sec.phi1 + tol
    assert sec.phi2 <= sec.psi1 + tol
    assert sec.psi2 <= sec.phi1 + tol


def test_boundary_residuals():
    # the defining extremum vanishes at each returned boundary
    targets = {"phi1": (BoundSide.RAW, "minimum"), "phi2": (BoundSide.RAW, "maximum"),
               "psi1": (BoundSide.LOWER, "maximum"), "psi2": (BoundSide.UPPER, "minimum")}
    for frac, b in ((ZERO, 1.3), (HALF, 1.5), (Frac(1, 3), 1.2)):
        for kind, (side, attr) in targets.items():
            a = boundary(kind, frac, b)
            ext = displacement_extrema(FamilyParams(a, b), side, frac)
            assert abs(getattr(ext, attr)) < 1e-10, (kind, frac, b)


def test_locking_interval_analytic_invertible():
    lo, hi = locking_interval(ZERO, 0.5)
    assert abs(lo + 0.5 / TWO_PI) < 1e-10
    assert abs(hi - 0.5 / TWO_PI) < 1e-10


def test_locking_interval_above_tip_absent():
    tip = tip_by_width(HALF)
    assert locking_interval(HALF, tip.b + 0.2) is None
    lo, hi = locking_interval(HALF, 1.0)
    assert lo < 0.5 < hi


def test_trace_phi_column_analytic():
    rows = trace(ZERO, 0.0, 1.0, 11)
    for sec in rows:
        assert abs(sec.phi1 - sec.b / TWO_PI) < 1e-12


def test_trace_orderings_and_degenerate_range():
    rows = trace(HALF, 1.0, 1.5, 6)
    for sec in rows:
        assert sec.phi2 <= sec.psi1 + 1e-9 and sec.psi2 <= sec.phi1 + 1e-9
    same = trace(HALF, 1.0, 1.0, 2)
    assert same[0] == same[1]


def test_trace_flags_artificial_jump():
    with pytest.warns(RuntimeWarning):
        trace(ZERO, 0.0, 1.0, 3, continuity_budget=1e-3)


def test_tip_half_symmetric():
    tip = tip_by_width(HALF)
    assert abs(tip.a - 0.5) < 1e-8
    assert tip.b > SINE.b_critical
    assert tip.residual < 1e-8
    assert tip.extra_crossings == ()


def test_tip_width_collapses_across():
    tip = tip_by_width(HALF)
    assert section(HALF, tip.b - 0.05).locking_width > 0
    assert section(HALF, tip.b + 0.05).locking_width < 0


def test_tip_rejects_endpoints():
    with pytest.raises(ValueError):
        tip_by_width(ZERO)


def test_tip_not_found_below_ceiling():
    with pytest.raises(TipNotFoundError):
        tip_by_width(Frac(1, 3), b_ceiling=1.05)


def test_left_edge_nondecreasing_in_fraction():
    # rotation number grows with a, so locking intervals are ordered like
    # their fractions
    fracs = sorted((ZERO, Frac(1, 3), Frac(2, 5), HALF, Frac(2, 3), Frac(3, 8)))
    for b in (1.0, 1.2):
        edges = [boundary("psi1", f, b) for f in fracs]
        assert all(e1 <= e2 + 1e-10 for e1, e2 in zip(edges, edges[1:]))


def test_fact9_tangency_signature_at_phi1():
    frac, b = HALF, 1.4
    a = boundary("phi1", frac, b)
    ext = displacement_extrema(FamilyParams(a, b), BoundSide.RAW, frac)
    for dx in (1e-5, 1e-4, 1e-3):
        for s in (-1, 1):
            x = ext.argmin + s * dx
            g = SINE.iterate(FamilyParams(a, b), BoundSide.RAW, x, frac.q) - x - frac.p
            assert g >= -1e-9
