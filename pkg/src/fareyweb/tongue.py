"""Tongue boundary functions of a at fixed b, locking intervals, and tips.

At fixed b and fixed p/q four values of a bound the tongue: phi1 (phi2) is
where the q-step displacement of the raw map has min (max) exactly zero, and
psi1 (psi2) is where the lower (upper) monotone bound's displacement has max
(min) exactly zero.  The locking interval is [psi1, psi2] when non-empty, and
phi2 <= {psi1, psi2} <= phi1 always.  Each defining objective is strictly
increasing in the translation parameter, so every boundary is a certified
bisection root.

A tip is the parameter point where the locking width psi2 - psi1 collapses to
zero; the first collapse above the critical line is the top of the principal
locking component.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import warnings

from .errors import ConsistencyError, TipNotFoundError
from .farey import Frac
from .lift import SINE, TWO_PI, BoundSide, FamilyParams
from .rotation import DEFAULT_GRID, DEFAULT_Q_CAP, _disp_extremum
from .solvers import bisect_root

#: objective -> (map side, which extremum of the displacement must vanish)
_OBJECTIVES = {
    "phi1": (BoundSide.RAW, "min"),
    "phi2": (BoundSide.RAW, "max"),
    "psi1": (BoundSide.LOWER, "max"),
    "psi2": (BoundSide.UPPER, "min"),
}

BOUNDARY_KINDS = tuple(_OBJECTIVES)


@dataclass(frozen=True)
class TongueSection:
    """The four boundary values at one b for one fraction."""

    frac: Frac
    b: float
    phi2: float
    psi1: float
    psi2: float
    phi1: float

    @property
    def locking_width(self) -> float:
        return self.psi2 - self.psi1


@dataclass(frozen=True)
class Tip:
    """A single-point horizontal slice of a locking region.

    ``residual`` is the locking width |psi2 - psi1| measured at the reported
    point, whichever method produced it.  ``extra_crossings`` lists further
    width sign changes seen by a full scan; a non-empty tuple flags a family
    whose locking region is not a single vertical slab.
    """

    frac: Frac
    a: float
    b: float
    method: str  # "width" | "intersection"
    residual: float
    extra_crossings: tuple[float, ...] = ()


def _default_bracket(frac: Frac, b: float) -> tuple[float, float]:
    # per-step displacement lies within b/2pi of a, so the objective has
    # opposite signs at p/q -+ (1/2 + b/2pi)
    r = 0.5 + b / TWO_PI
    v = frac.value
    return v - r, v + r


def boundary(kind: str, frac: Frac, b: float, *, xtol: float = 1e-12,
             family=SINE, cap: int = DEFAULT_Q_CAP,
             grid: tuple[int, int] = DEFAULT_GRID,
             bracket: tuple[float, float] | None = None) -> float:
    """The unique a at which the selected displacement extremum vanishes.

    An optional ``bracket`` hint is validated and silently widened to the
    certified default when it does not straddle the root.
    """
    if kind not in _OBJECTIVES:
        raise ValueError(f"kind must be one of {BOUNDARY_KINDS}, got {kind!r}")
    if frac.q > cap:
        raise ValueError(f"denominator {frac.q} exceeds cap {cap}")
    side, which = _OBJECTIVES[kind]
    p, q = frac.p, frac.q

    def objective(a: float) -> float:
        return _disp_extremum(FamilyParams(a, b), side, p, q, which, family, grid, 1e-13)[0]

    if bracket is not None:
        lo, hi = bracket
        f_lo, f_hi = objective(lo), objective(hi)
        if f_lo <= 0.0 <= f_hi:
            return bisect_root(objective, lo, hi, xtol, f_lo=f_lo, f_hi=f_hi)
    lo, hi = _default_bracket(frac, b)
    return bisect_root(objective, lo, hi, xtol)


def section(frac: Frac, b: float, *, xtol: float = 1e-12, family=SINE,
            cap: int = DEFAULT_Q_CAP, grid: tuple[int, int] = DEFAULT_GRID,
            order_tol: float = 1e-8) -> TongueSection:
    """All four boundaries at b, with the required orderings checked.

    psi1 > psi2 is legal (empty locking interval above the tip); only
    phi2 <= phi1, phi2 <= psi1, psi2 <= phi1 are enforced.
    """
    vals = {k: boundary(k, frac, b, xtol=xtol, family=family, cap=cap, grid=grid)
            for k in BOUNDARY_KINDS}
    sec = TongueSection(frac, b, vals["phi2"], vals["psi1"], vals["psi2"], vals["phi1"])
    if (sec.phi2 > sec.phi1 + order_tol or sec.phi2 > sec.psi1 + order_tol
            or sec.psi2 > sec.phi1 + order_tol):
        raise ConsistencyError(f"boundary ordering violated at {frac}, b={b}: {vals}")
    return sec


def locking_interval(frac: Frac, b: float, **kw) -> tuple[float, float] | None:
    """[psi1, psi2] when non-empty, else None."""
    sec = section(frac, b, **kw)
    if sec.psi1 <= sec.psi2:
        return sec.psi1, sec.psi2
    return None


def trace(frac: Frac, b_lo: float, b_hi: float, steps: int, *,
          continuity_budget: float | None = None, **kw) -> list[TongueSection]:
    """Sections at uniformly spaced b; adjacent jumps above budget are warned.

    The default budget scales with the step so that the boundaries' regular
    drift in b never trips it; only step-disproportionate jumps are flagged.
    """
    if steps < 2:
        raise ValueError("steps must be at least 2")
    if b_lo > b_hi:
        raise ValueError("b_lo must not exceed b_hi")
    if continuity_budget is None:
        continuity_budget = max(0.02, 2.0 * (b_hi - b_lo) / (steps - 1))
    out = []
    for i in range(steps):
        b = b_lo + (b_hi - b_lo) * i / (steps - 1)
        out.append(section(frac, b, **kw))
    for prev, cur in zip(out, out[1:]):
        for name in BOUNDARY_KINDS:
            jump = abs(getattr(cur, name) - getattr(prev, name))
            if jump > continuity_budget:
                warnings.warn(
                    f"{name} of {frac} jumps by {jump:.3g} between b={prev.b} and b={cur.b}",
                    RuntimeWarning, stacklevel=2)
    return out


@lru_cache(maxsize=256)
def tip_by_width(frac: Frac, *, b_step: float = 0.01, b_ceiling: float = 4.0,
                 btol: float = 1e-10, xtol: float = 1e-12, family=SINE,
                 cap: int = DEFAULT_Q_CAP, grid: tuple[int, int] = DEFAULT_GRID,
                 full_scan: bool = False) -> Tip:
    """Lowest b above the critical line where the locking width reaches zero.

    Coarse upward scan to the first sign change of the width, then bisection.
    ``full_scan`` keeps scanning to the ceiling and records any further sign
    changes (a connected principal component has none).
    """
    if frac.is_endpoint:
        raise ValueError(f"{frac} has no tip in the scanned range")
    hints = {"psi1": None, "psi2": None}

    def width(b: float) -> float:
        vals = {}
        for k in ("psi1", "psi2"):
            hint = hints[k]
            br = (hint - 0.05, hint + 0.05) if hint is not None else None
            vals[k] = boundary(k, frac, b, xtol=xtol, family=family, cap=cap,
                               grid=grid, bracket=br)
            hints[k] = vals[k]
        return vals["psi2"] - vals["psi1"]

    b_prev = family.b_critical
    w_prev = width(b_prev)
    if w_prev < 0.0:
        raise ConsistencyError(f"{frac} already unlocked on the critical line")
    b_lo = b_hi = None
    extras: list[float] = []
    b = b_prev
    while b < b_ceiling:
        b = min(b + b_step, b_ceiling)
        w = width(b)
        if w_prev > 0.0 >= w or w_prev >= 0.0 > w:
            if b_lo is None:
                b_lo, b_hi = b_prev, b
                if not full_scan:
                    break
            else:
                extras.append(0.5 * (b_prev + b))
        elif b_lo is not None and (w_prev < 0.0 <= w or w_prev <= 0.0 < w):
            extras.append(0.5 * (b_prev + b))
        b_prev, w_prev = b, w
    if b_lo is None:
        raise TipNotFoundError(f"no width collapse for {frac} below b={b_ceiling}")
    b_star = bisect_root(lambda bb: -width(bb), b_lo, b_hi, btol)
    psi1 = boundary("psi1", frac, b_star, xtol=xtol, family=family, cap=cap, grid=grid)
    psi2 = boundary("psi2", frac, b_star, xtol=xtol, family=family, cap=cap, grid=grid)
    return Tip(frac, 0.5 * (psi1 + psi2), b_star, "width", abs(psi2 - psi1),
               tuple(extras))
