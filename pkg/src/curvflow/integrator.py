"""Time integration of the graph flow and of its geodesic-sphere solutions.

A radial graph moving with normal speed ``-F`` satisfies ``du/dt = -v F``.
The PDE is advanced by explicit Heun (RK2) steps on the grid.  Geodesic
spheres stay spheres and their radius obeys ``dTheta/dt = -f(ct, ct)``;
that ODE is solved to high accuracy with scipy and serves as the reference
for extinction times and for the rescaled variables.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np
from scipy import integrate, optimize

from .geometry import (EUCLIDEAN, HYPERBOLIC, SPHERICAL, Ambient, CurvatureField,
                       GeometryError, RadialGraph, curvature_field)
from .speeds import ConeError, SpeedKind, SpeedSpec, cone_margin, speed_value

__all__ = [
    "FlowState",
    "StepRejected",
    "FlowAborted",
    "StopRule",
    "Trajectory",
    "SphericalSolution",
    "RescaledState",
    "graph_velocity",
    "stable_dt",
    "step",
    "run_flow",
    "spherical_ode_rhs",
    "extinction_time_from",
    "solve_spherical",
    "sphere_with_extinction",
    "rescale",
    "initial_state",
]


class StepRejected(RuntimeError):
    """A trial step produced invalid data; retry with a smaller time step."""


class FlowAborted(RuntimeError):
    """The run could not continue (persistent rejection)."""


@dataclass(frozen=True)
class FlowState:
    graph: RadialGraph
    curvature: CurvatureField
    spec: SpeedSpec
    step_count: int = 0
    dt_last: float = 0.0

    @property
    def t(self) -> float:
        return self.graph.t


def initial_state(graph: RadialGraph, spec: SpeedSpec) -> FlowState:
    graph.validate()
    return FlowState(graph, curvature_field(graph), spec)


def _velocity(graph: RadialGraph, curv: CurvatureField, spec: SpeedSpec) -> np.ndarray:
    margin, label = cone_margin(spec, curv.k1, curv.k2)
    bad = margin <= spec.cone_eps
    if bad.any():
        j, k = np.argwhere(bad)[0]
        th, ph = graph.grid.theta[j], graph.grid.phi[k]
        raise ConeError(f"{label} violated at node ({j}, {k}) theta={th:.6g} phi={ph:.6g} t={graph.t:.10g}")
    return -curv.v * speed_value(spec, curv.k1, curv.k2)


def graph_velocity(state: FlowState) -> np.ndarray:
    """``du/dt = -v F`` at every node."""
    return _velocity(state.graph, state.curvature, state.spec)


def diffusivity(state: FlowState) -> float:
    """Largest second-order coefficient ``max(f1, f2) / sn(u)^2`` over the grid."""
    from .speeds import speed_jet

    jet = speed_jet(state.spec, (state.curvature.k1, state.curvature.k2))
    top = np.maximum(jet.df[0], jet.df[1])
    sn = state.graph.ambient.sn(state.graph.u)
    return float(np.max(top / sn**2))


def stable_dt(state: FlowState, c_cfl: float = 0.2, max_rel_change: float = 0.01,
              velocity: np.ndarray | None = None) -> float:
    """Explicit step bound: ``C h^2 / diffusivity`` and a cap on the relative change of u."""
    h = state.graph.grid.h_min
    dt = c_cfl * h * h / diffusivity(state)
    vel = graph_velocity(state) if velocity is None else velocity
    rate = float(np.max(np.abs(vel) / state.graph.u))
    if rate > 0:
        dt = min(dt, max_rel_change / rate)
    return dt


def _valid(graph: RadialGraph) -> None:
    try:
        graph.validate()
    except GeometryError as exc:
        raise StepRejected(str(exc)) from exc


def _stage(g0: RadialGraph, spec: SpeedSpec, u, t):
    g = g0.with_u(u, t)
    _valid(g)
    c = curvature_field(g)
    return g, c, _velocity(g, c, spec)


def step(state: FlowState, dt: float, velocity: np.ndarray | None = None,
         scheme: str = "rk2") -> FlowState:
    """One explicit step (Heun ``rk2`` or classical ``rk4``).

    Raises ``StepRejected`` when a stage leaves the domain or the speed cone.
    """
    if not dt > 0:
        raise ValueError("dt must be positive")
    g0, spec = state.graph, state.spec
    u0, t0 = g0.u, g0.t
    try:
        k1 = graph_velocity(state) if velocity is None else velocity
        if scheme == "rk2":
            _, _, k2 = _stage(g0, spec, u0 + dt * k1, t0 + dt)
            u_new = u0 + 0.5 * dt * (k1 + k2)
        elif scheme == "rk4":
            _, _, k2 = _stage(g0, spec, u0 + 0.5 * dt * k1, t0 + 0.5 * dt)
            _, _, k3 = _stage(g0, spec, u0 + 0.5 * dt * k2, t0 + 0.5 * dt)
            _, _, k4 = _stage(g0, spec, u0 + dt * k3, t0 + dt)
            u_new = u0 + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        else:
            raise ValueError(f"unknown scheme {scheme!r}; expected 'rk2' or 'rk4'")
        g, c, _ = _stage(g0, spec, u_new, t0 + dt)  # cone check on the accepted state
    except (ConeError, GeometryError, FloatingPointError) as exc:
        raise StepRejected(str(exc)) from exc
    return FlowState(g, c, spec, state.step_count + 1, dt)


@dataclass(frozen=True)
class StopRule:
    theta_floor: float = 1e-2
    t_max: float = math.inf
    max_steps: int = 2_000_000
    c_cfl: float = 0.2
    max_rel_change: float = 0.01
    max_rejections: int = 30
    degeneracy_threshold: float = 0.05
    scheme: str = "rk2"


@dataclass
class Trajectory:
    final: FlowState
    steps: int
    events: list[str] = field(default_factory=list)
    reason: str = ""


def run_flow(state0: FlowState, rule: StopRule = StopRule(),
             callback: Callable[[FlowState], None] | None = None) -> Trajectory:
    """Adaptive-dt loop until ``min u <= theta_floor``, ``t >= t_max`` or ``max_steps``.

    ``callback`` is invoked with the initial state and after every accepted step.
    """
    state = state0
    events: list[str] = []
    if callback:
        callback(state)
    rejections = 0
    scale = 1.0
    while True:
        u_min = float(state.graph.u.min())
        if u_min <= rule.theta_floor:
            return Trajectory(state, state.step_count, events, "theta_floor")
        if state.t >= rule.t_max:
            return Trajectory(state, state.step_count, events, "t_max")
        if state.step_count >= rule.max_steps:
            return Trajectory(state, state.step_count, events, "max_steps")
        vel = graph_velocity(state)
        dt = stable_dt(state, rule.c_cfl, rule.max_rel_change, vel) * scale
        # rescaled mean curvature u*H; degenerate diffusion where it nearly vanishes
        h_tilde = float(np.min(state.graph.u * state.curvature.H))
        if h_tilde < rule.degeneracy_threshold:
            dt *= 0.5
            events.append(f"degenerate-parabolicity t={state.t:.10g} min(u*H)={h_tilde:.6g}: dt halved")
        dt = min(dt, rule.t_max - state.t) if math.isfinite(rule.t_max) else dt
        try:
            state = step(state, dt, vel, rule.scheme)
        except StepRejected as exc:
            rejections += 1
            scale *= 0.5
            events.append(f"step rejected t={state.t:.10g} dt={dt:.6g}: {exc}")
            if rejections > rule.max_rejections:
                raise FlowAborted(f"persistent step rejection at t={state.t}: {exc}") from exc
            continue
        rejections = 0
        scale = min(1.0, scale * 2)
        if callback:
            callback(state)


# ---------------------------------------------------------------------------
# geodesic spheres

def _sphere_speed(ambient: Ambient, spec: SpeedSpec, theta):
    k = ambient.ct(theta)
    if spec.kind is SpeedKind.MEAN_POW:
        return (2 * k) ** spec.alpha
    if spec.kind is SpeedKind.SCALAR_POW:
        return (k * k - 1) ** spec.alpha
    return (k * k) ** spec.alpha


def spherical_ode_rhs(ambient: Ambient, spec: SpeedSpec, theta):
    """``dTheta/dt`` for a geodesic sphere of radius ``theta`` (principal curvatures ``ct(theta)``)."""
    th = np.asarray(theta, dtype=float)
    hi = ambient.max_radius()
    if np.any(th <= 0) or np.any(th >= hi):
        raise ValueError(f"sphere radius must lie in (0, {hi}), got {theta!r}")
    if spec.kind is SpeedKind.SCALAR_POW:
        # K - 1 = coth^2 - 1 = 1 / sinh^2, written without cancellation
        out = -np.sinh(th) ** (-2 * float(spec.alpha))
    else:
        out = -_sphere_speed(ambient, spec, th)
    return out if np.ndim(theta) else float(out)


def extinction_time_from(ambient: Ambient, spec: SpeedSpec, theta: float) -> float:
    """Time for a sphere of radius ``theta`` to shrink to a point: ``int_0^theta dr / |rhs(r)|``."""
    if theta <= 0:
        return 0.0
    val, _ = integrate.quad(lambda r: -1.0 / spherical_ode_rhs(ambient, spec, r), 0.0, theta,
                            epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def _radius_with_remaining(ambient: Ambient, spec: SpeedSpec, remaining: float) -> float:
    """Radius whose extinction time equals ``remaining``."""
    if remaining <= 0:
        return 0.0
    lo, hi = 0.0, 1.0
    cap = ambient.max_radius()
    if math.isfinite(cap):
        # extinction time diverges at the equator, so approach it geometrically
        gap = cap / 2
        while extinction_time_from(ambient, spec, cap - gap) < remaining:
            gap /= 4
            if gap < 1e-12 * cap:
                raise ValueError("no sphere in the hemisphere has that extinction time")
        hi = cap - gap
    else:
        while extinction_time_from(ambient, spec, hi) < remaining:
            hi *= 2
    return optimize.brentq(lambda r: extinction_time_from(ambient, spec, r) - remaining, lo, hi,
                           xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)


@dataclass
class SphericalSolution:
    """Radius ``Theta(t)`` of the shrinking geodesic sphere started at ``Theta0``."""

    ambient: Ambient
    spec: SpeedSpec
    Theta0: float
    samples: np.ndarray  # (n, 2) rows (t, Theta)
    T_extinct: float
    t_floor: float
    dense: object = field(repr=False, default=None)
    achieved_error: float = 0.0

    def theta(self, t):
        """``Theta`` at time(s) ``t`` in ``[0, T_extinct)``."""
        t_arr = np.atleast_1d(np.asarray(t, dtype=float))
        if np.any(t_arr < 0) or np.any(t_arr >= self.T_extinct):
            raise ValueError("time outside [0, T_extinct)")
        out = np.empty_like(t_arr)
        s_lo, s_hi = math.log(self.samples[-1, 1]), math.log(self.Theta0)
        inside = t_arr <= self.t_floor
        for i in np.flatnonzero(inside):
            ti = t_arr[i]
            if ti <= 0:
                out[i] = self.Theta0
            elif ti >= self.t_floor:
                out[i] = self.samples[-1, 1]
            else:
                s = optimize.brentq(lambda x: self.dense(x)[0] - ti, s_lo, s_hi,
                                    xtol=1e-15, rtol=4 * np.finfo(float).eps)
                out[i] = math.exp(s)
        for i in np.flatnonzero(~inside):
            out[i] = _radius_with_remaining(self.ambient, self.spec, self.T_extinct - t_arr[i])
        return out if np.ndim(t) else float(out[0])


def solve_spherical(ambient: Ambient, spec: SpeedSpec, Theta0: float, tol: float = 1e-12,
                    theta_floor: float = 1e-2) -> SphericalSolution:
    """Solve the sphere ODE down to ``theta_floor``; the tail is added by quadrature.

    The equation is autonomous, so time is integrated as a function of ``s = log Theta``
    (DOP853): ``dt/ds = Theta / rhs(Theta)`` stays smooth even where ``Theta(t)`` is steep.
    """
    spherical_ode_rhs(ambient, spec, Theta0)
    if not 0 < theta_floor < Theta0:
        raise ValueError("theta_floor must lie in (0, Theta0)")
    T_quad = extinction_time_from(ambient, spec, Theta0)

    def dt_ds(s, y):
        th = math.exp(s)
        return [th / spherical_ode_rhs(ambient, spec, th)]

    s0, s_floor = math.log(Theta0), math.log(theta_floor)
    sol = integrate.solve_ivp(dt_ds, (s0, s_floor), [0.0], method="DOP853",
                              rtol=tol, atol=tol * T_quad, dense_output=True)
    if sol.status != 0:
        raise RuntimeError(f"sphere ODE did not reach the floor: {sol.message}")
    t_floor = float(sol.y[0, -1])
    T = t_floor + extinction_time_from(ambient, spec, theta_floor)
    samples = np.column_stack([sol.y[0], np.exp(sol.t)])
    return SphericalSolution(ambient, spec, float(Theta0), samples, T, t_floor, sol.sol,
                             achieved_error=abs(T - T_quad) / T_quad)


def sphere_with_extinction(ambient: Ambient, spec: SpeedSpec, T: float, tol: float = 1e-12,
                           theta_floor: float = 1e-2) -> SphericalSolution:
    """The geodesic-sphere solution that becomes extinct at time ``T``."""
    theta0 = _radius_with_remaining(ambient, spec, T)
    return solve_spherical(ambient, spec, theta0, tol, min(theta_floor, theta0 / 2))


@dataclass(frozen=True)
class RescaledState:
    u_tilde: np.ndarray
    H_tilde: np.ndarray
    tau: float
    Theta: float


def rescale(state: FlowState, spherical: SphericalSolution) -> RescaledState:
    """``u~ = u/Theta``, ``H~ = Theta H`` and ``tau = -log Theta`` at the state's time."""
    if state.t >= spherical.T_extinct:
        raise ValueError("state time is at or beyond the comparison sphere's extinction time")
    theta = spherical.theta(state.t)
    return RescaledState(state.graph.u / theta, theta * state.curvature.H, -math.log(theta), theta)
