"""Pinching quantities, curvature lower bounds and per-step diagnostics.

Pinching quantity ``G`` for each flow (``F`` the speed):

=============  ==============  =====================================
flow           ambient         ``G``
=============  ==============  =====================================
mean_power     hyperbolic      ``F^2 (k1-k2)^2 / (K-1)^2``
scalar_power   hyperbolic      ``F^2 (k1-k2)^2 / (K-1)^2``
gauss_power    hyperbolic      ``F^2 (k1-k2)^2 / (K-1)^2``
mean_power     sphere, R^3     ``F^2 (k1-k2)^2 / K^2``
gauss_power    sphere, R^3     ``F^2 (k1-k2)^2 / K^2``
=============  ==============  =====================================

With ``F = H^a``, ``(K-1)^a`` or ``K^a`` these are the quantities
``H^(2a)(k1-k2)^2/(K-1)^2``, ``(K-1)^(2a-2)(k1-k2)^2``,
``K^(2a)(k1-k2)^2/(K-1)^2``, ``(k1-k2)^2 H^(2a)/K^2`` and
``(k1-k2)^2 / K^(2-2a)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .geometry import HYPERBOLIC, SPHERICAL, Ambient, RadialGraph
from .integrator import FlowState, RescaledState, SphericalSolution
from .speeds import SpeedKind, SpeedSpec

__all__ = [
    "BoundExhausted",
    "MonitorRecord",
    "PinchFit",
    "G_RANGES",
    "PINCH_RANGES",
    "pinching_G",
    "bound_scalar_lower",
    "bound_H_lower_sphere",
    "bound_K_lower_sphere",
    "bound_blowup_time",
    "curvature_bounds",
    "pinch_decay_check",
    "radius_ratio",
    "assemble_record",
    "g_tolerance",
]


class BoundExhausted(ValueError):
    """The lower-bound formula has blown up; it carries no information at this time."""


#: alpha ranges on which max G is non-increasing, keyed by (kind, c).
G_RANGES = {
    (SpeedKind.MEAN_POW, -1): (Fraction(1, 3), Fraction(4)),
    (SpeedKind.SCALAR_POW, -1): (Fraction(1, 4), Fraction(1)),
    (SpeedKind.GAUSS_POW, -1): (Fraction(1, 4), Fraction(1)),
    (SpeedKind.MEAN_POW, 1): (Fraction(1), Fraction(5)),
    (SpeedKind.GAUSS_POW, 1): (Fraction(1, 4), Fraction(1)),
}

#: alpha ranges on which k1/k2 stays bounded by a multiple of its initial value.
PINCH_RANGES = {
    (SpeedKind.MEAN_POW, -1): (Fraction(1), Fraction(4)),
    (SpeedKind.SCALAR_POW, -1): (Fraction(1, 2), Fraction(1)),
    (SpeedKind.GAUSS_POW, -1): (Fraction(1, 2), Fraction(1)),
    (SpeedKind.MEAN_POW, 1): (Fraction(1), Fraction(5)),
    (SpeedKind.GAUSS_POW, 1): (Fraction(1, 2), Fraction(1)),
}


def _in(rng, alpha) -> bool:
    return rng is not None and rng[0] <= Fraction(alpha).limit_denominator(10**9) <= rng[1]


def pinching_G(spec: SpeedSpec, kappa, F):
    """Pinching quantity of the flow, see the module table."""
    k1, k2 = kappa
    k1a, k2a = np.asarray(k1), np.asarray(k2)
    if spec.ambient.c == HYPERBOLIC:
        if np.any(k1a * k2a <= 1):
            raise ValueError("pinching quantity needs k1*k2 > 1 in hyperbolic space")
        denom = k1 * k2 - 1
    else:
        if np.any(k1a <= 0) or np.any(k2a <= 0):
            raise ValueError("pinching quantity needs k1 > 0 and k2 > 0")
        denom = k1 * k2
    return F * F * (k1 - k2) ** 2 / denom**2


def _power_bound(m, rate, p, t, label):
    base = 1 - rate * t
    if base <= 0:
        raise BoundExhausted(f"{label} bound exhausted at t={t:.10g} (blow-up time {1 / rate:.10g})")
    return m * base ** (-p)


def _scalar_params(kind: SpeedKind, alpha, m):
    a = float(alpha)
    if kind is SpeedKind.MEAN_POW:
        return 2**a * (a + 1) * m ** ((a + 1) / 2), 2 / (a + 1)
    return (2 * a + 1) * m ** (a + 0.5), 2 / (2 * a + 1)


def bound_scalar_lower(kind, alpha, t, K0min):
    """Lower bound for ``min(K - 1)`` at time ``t`` (hyperbolic space, ``K0min > 1``)."""
    kind = SpeedKind(kind)
    if not K0min > 1:
        raise ValueError("the scalar-curvature bound needs min K > 1 initially")
    m = K0min - 1
    rate, p = _scalar_params(kind, alpha, m)
    return _power_bound(m, rate, p, t, "K-1")


def bound_H_lower_sphere(alpha, t, H0min):
    """Lower bound for ``min H`` under the mean-power flow in the sphere."""
    if not H0min > 0:
        raise ValueError("needs min H > 0 initially")
    a = float(alpha)
    return _power_bound(H0min, (a + 1) / 2 * H0min ** (a + 1), 1 / (a + 1), t, "H")


def bound_K_lower_sphere(alpha, t, K0min):
    """Lower bound for ``min K`` under the Gauss-power flow in the sphere."""
    if not K0min > 0:
        raise ValueError("needs min K > 0 initially")
    a = float(alpha)
    return _power_bound(K0min, (2 * a + 1) * K0min ** (a + 0.5), 2 / (2 * a + 1), t, "K")


def bound_blowup_time(spec: SpeedSpec, K0min: float, H0min: float) -> float:
    """Time at which the applicable lower-bound formula blows up (an existence-time bound)."""
    a = float(spec.alpha)
    if spec.ambient.c == HYPERBOLIC:
        rate, _ = _scalar_params(spec.kind, spec.alpha, K0min - 1)
        return 1 / rate
    if spec.ambient.c == SPHERICAL and spec.kind is SpeedKind.MEAN_POW:
        return 2 / (a + 1) * H0min ** (-(a + 1))
    if spec.ambient.c == SPHERICAL and spec.kind is SpeedKind.GAUSS_POW:
        return 1 / ((2 * a + 1) * K0min ** (a + 0.5))
    return math.inf


def curvature_bounds(spec: SpeedSpec, t: float, K0min: float, H0min: float) -> tuple[float, float]:
    """``(bound on min K, bound on min H)`` at time ``t``; NaN where no formula applies.

    In hyperbolic space the K bound is ``1 + bound(K-1)``.  In the sphere the
    mean-power flow keeps ``min K`` above its initial value.  Exhausted bounds
    are reported as ``inf`` (the flow must already have ended).
    """
    c, kind, a = spec.ambient.c, spec.kind, spec.alpha
    try:
        if c == HYPERBOLIC:
            return 1 + bound_scalar_lower(kind, a, t, K0min), math.nan
        if c == SPHERICAL and kind is SpeedKind.MEAN_POW:
            return K0min, bound_H_lower_sphere(a, t, H0min)
        if c == SPHERICAL and kind is SpeedKind.GAUSS_POW:
            return bound_K_lower_sphere(a, t, K0min), math.nan
    except BoundExhausted:
        return math.inf, math.inf
    return math.nan, math.nan


def radius_ratio(graph: RadialGraph) -> float:
    """Max over min distance from the area centroid of the surface to its nodes.

    The nodes are embedded in the standard model of the space form, their
    area-weighted mean is projected back onto the space form to give the
    center, and distances are geodesic distances from that center.
    """
    amb, grid, u = graph.ambient, graph.grid, graph.u
    x = grid.directions()
    # axisymmetric grids carry one meridian; the centroid lies on the axis
    axis_only = grid.n_phi == 1
    w = grid.area_weights() * amb.sn(u) ** 2
    if amb.c == 0:
        pts = u[..., None] * x
        center = np.tensordot(w, pts, axes=2) / w.sum()
        if axis_only:
            center[:2] = 0.0
        d = np.linalg.norm(pts - center, axis=-1)
    else:
        f0 = np.cosh(u) if amb.c == HYPERBOLIC else np.cos(u)
        pts = np.concatenate([f0[..., None], amb.sn(u)[..., None] * x], axis=-1)
        m = np.tensordot(w, pts, axes=2) / w.sum()
        if axis_only:
            m[1:3] = 0.0
        if amb.c == HYPERBOLIC:
            m = m / math.sqrt(m[0] ** 2 - m[1:] @ m[1:])
            d = np.arccosh(np.maximum(pts[..., 0] * m[0] - pts[..., 1:] @ m[1:], 1.0))
        else:
            m = m / np.linalg.norm(m)
            d = np.arccos(np.clip(pts @ m, -1.0, 1.0))
    return float(d.max() / d.min())


@dataclass(frozen=True)
class MonitorRecord:
    t: float
    tau: float
    dt: float
    u_min: float
    u_max: float
    k1_max: float
    k2_min: float
    H_min: float
    K_min: float
    G_max: float
    pinch_ratio: float
    radius_ratio: float
    u_tilde_dev: float
    bound_K: float
    bound_H: float
    theta: float
    checks: dict = field(default_factory=dict, compare=False)

    @property
    def Kminus1_min(self) -> float:
        return self.K_min - 1


def g_tolerance(G0max: float, rel: float = 1e-6, abs_: float = 1e-12) -> float:
    return rel * G0max + abs_


def assemble_record(state: FlowState, rescaled: RescaledState | None = None,
                    spherical: SphericalSolution | None = None,
                    previous: MonitorRecord | None = None, initial: MonitorRecord | None = None,
                    tol_rel: float = 1e-6, tol_abs: float = 1e-12, bound_slack: float = 1e-6) -> MonitorRecord:
    """Gather the diagnostics of one state and compare with bounds and the previous record."""
    spec, curv, g = state.spec, state.curvature, state.graph
    k1, k2 = curv.k1, curv.k2
    from .speeds import speed_value

    F = speed_value(spec, k1, k2)
    has_G = (spec.kind, spec.ambient.c) in G_RANGES or spec.ambient.c == 0
    G_max = float(np.max(pinching_G(spec, (k1, k2), F))) if has_G else math.nan
    H_min, K_min = float(curv.H.min()), float(curv.K.min())
    if initial is None:
        K0, H0 = K_min, H_min
    else:
        K0, H0 = initial.K_min, initial.H_min
    bK, bH = curvature_bounds(spec, state.t, K0, H0)
    if rescaled is None and spherical is not None and state.t < spherical.T_extinct:
        from .integrator import rescale

        rescaled = rescale(state, spherical)
    tau = rescaled.tau if rescaled is not None else math.nan
    theta = rescaled.Theta if rescaled is not None else math.nan
    dev = float(np.max(np.abs(rescaled.u_tilde - 1))) if rescaled is not None else math.nan
    rec = MonitorRecord(
        t=state.t, tau=tau, dt=state.dt_last,
        u_min=float(g.u.min()), u_max=float(g.u.max()),
        k1_max=float(k1.max()), k2_min=float(k2.min()), H_min=H_min, K_min=K_min,
        G_max=G_max, pinch_ratio=float(np.max(k1 / k2)), radius_ratio=radius_ratio(g),
        u_tilde_dev=dev, bound_K=bK, bound_H=bH, theta=theta,
    )
    rec.checks.update(record_checks(spec, rec, previous, initial, tol_rel, tol_abs, bound_slack))
    return rec


def record_checks(spec: SpeedSpec, rec: MonitorRecord, previous: MonitorRecord | None,
                  initial: MonitorRecord | None, tol_rel=1e-6, tol_abs=1e-12, bound_slack=1e-6) -> dict:
    """Pass/fail comparisons for one record (vacuous on the first record)."""
    checks = {}
    if spec.ambient.c == HYPERBOLIC:
        checks["cone"] = rec.K_min > 1
    else:
        checks["cone"] = rec.k2_min > 0
    if not math.isnan(rec.bound_K):
        checks["bound_K"] = rec.K_min >= rec.bound_K - bound_slack
    if not math.isnan(rec.bound_H):
        checks["bound_H"] = rec.H_min >= rec.bound_H - bound_slack
    if previous is not None and initial is not None and not math.isnan(rec.G_max):
        if _in(G_RANGES.get((spec.kind, spec.ambient.c)), spec.alpha):
            checks["G_monotone"] = rec.G_max <= previous.G_max + g_tolerance(initial.G_max, tol_rel, tol_abs)
    return checks


@dataclass(frozen=True)
class PinchFit:
    slope: float
    intercept: float
    n_points: int
    trivially_pinched: bool = False


def pinch_decay_check(records: Sequence[MonitorRecord], alpha=None, floor: float = 1e-10,
                      tau_min: float | None = None) -> PinchFit:
    """Least-squares slope of ``log(max k1/k2 - 1)`` against ``tau``.

    Records with a pinching excess at round-off level (``<= floor``) are
    ignored; if all are, the run is reported as trivially pinched.  The
    expected slope for the mean-power flow in hyperbolic space is
    ``-(alpha - 1)``.
    """
    tau = np.array([r.tau for r in records], dtype=float)
    ex = np.array([r.pinch_ratio - 1 for r in records], dtype=float)
    keep = np.isfinite(tau) & (ex > floor)
    if tau_min is not None:
        keep &= tau >= tau_min
    if keep.sum() < 2:
        return PinchFit(math.nan, math.nan, int(keep.sum()), trivially_pinched=True)
    slope, intercept = np.polyfit(tau[keep], np.log(ex[keep]), 1)
    return PinchFit(float(slope), float(intercept), int(keep.sum()))
