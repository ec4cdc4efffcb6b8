"""Run configuration: YAML in, validated frozen dataclasses out.

All lengths are geodesic lengths of the ambient space form.  ``alpha`` may
be written as an integer, a float or an exact fraction string such as
``"1/3"``.
"""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import yaml

from .geometry import HYPERBOLIC, Ambient, RadialGraph, SphereGrid, curvature_field
from .speeds import SpeedKind, SpeedSpec

__all__ = [
    "ConfigError",
    "GridConfig",
    "InitialConfig",
    "IntegratorConfig",
    "MonitorConfig",
    "RunConfig",
    "load_config",
    "emit_config",
    "build_initial_graph",
    "check_initial_surface",
]


class ConfigError(ValueError):
    """Malformed or invalid configuration."""


@dataclass(frozen=True)
class GridConfig:
    mode: str = "axisymmetric"
    n_theta: int = 64
    n_phi: int = 1


@dataclass(frozen=True)
class InitialConfig:
    theta0: float = 1.0
    legendre: dict = field(default_factory=dict)  # mode l -> amplitude (length units)
    random_amplitude: float = 0.0  # extra random P2..P4 amplitudes drawn from the seed


@dataclass(frozen=True)
class IntegratorConfig:
    scheme: str = "rk2"
    c_cfl: float = 0.2
    theta_floor: float = 1e-2
    t_max: float | None = None
    max_rel_change: float = 0.01
    max_steps: int = 2_000_000


@dataclass(frozen=True)
class MonitorConfig:
    stride: int = 1
    tol_G_rel: float = 1e-6
    tol_G_abs: float = 1e-12
    bound_slack: float = 1e-6
    pinch_factor: float = 1.05
    radius_factor: float = 2.0
    contraction: float = 1 / 3


@dataclass(frozen=True)
class RunConfig:
    ambient: str = "hyperbolic"
    kind: str = "mean_power"
    alpha: Fraction | float = Fraction(1)
    grid: GridConfig = GridConfig()
    initial: InitialConfig = InitialConfig()
    integrator: IntegratorConfig = IntegratorConfig()
    monitor: MonitorConfig = MonitorConfig()
    out_dir: str = "out"
    seed: int = 0
    name: str = ""

    @property
    def speed(self) -> SpeedSpec:
        return SpeedSpec(SpeedKind(self.kind), self.alpha, Ambient.from_name(self.ambient))

    def label(self) -> str:
        return self.name or f"{self.kind}-{self.ambient}-alpha{_alpha_text(self.alpha).replace('/', '_')}"

    def strict(self) -> "RunConfig":
        """Copy with the numerical monitor tolerances divided by ten."""
        m = self.monitor
        return dataclasses.replace(self, monitor=dataclasses.replace(
            m, tol_G_rel=m.tol_G_rel / 10, tol_G_abs=m.tol_G_abs / 10, bound_slack=m.bound_slack / 10))


def _alpha_text(a) -> str:
    if isinstance(a, Fraction):
        return str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
    return repr(float(a))


def _parse_alpha(value):
    if isinstance(value, bool):
        raise ConfigError("alpha must be a number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if value.is_integer():
            return Fraction(int(value))
        return value
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"alpha {value!r} is not a number or fraction") from exc
    raise ConfigError(f"alpha {value!r} is not a number")


def _section(cls, data, where):
    if data is None:
        return cls()
    if not isinstance(data, dict):
        raise ConfigError(f"section '{where}' must be a mapping")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown key(s) in '{where}': {', '.join(sorted(map(str, unknown)))}")
    return cls(**data)


def _from_mapping(data: dict) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping at the top level")
    data = dict(data)
    top = {f.name for f in dataclasses.fields(RunConfig)}
    unknown = set(data) - top
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(sorted(map(str, unknown)))}")
    init = dict(data.get("initial") or {})
    if "sphere" in init:
        init["theta0"] = init.pop("sphere")
    if "legendre" in init:
        init["legendre"] = {int(k): float(v) for k, v in (init["legendre"] or {}).items()}
    integ = dict(data.get("integrator") or {})
    cfg = RunConfig(
        ambient=str(data.get("ambient", "hyperbolic")),
        kind=str(data.get("kind", "mean_power")),
        alpha=_parse_alpha(data.get("alpha", 1)),
        grid=_section(GridConfig, data.get("grid"), "grid"),
        initial=_section(InitialConfig, init, "initial"),
        integrator=_section(IntegratorConfig, integ, "integrator"),
        monitor=_section(MonitorConfig, data.get("monitor"), "monitor"),
        out_dir=str(data.get("out_dir", "out")),
        seed=int(data.get("seed", 0)),
        name=str(data.get("name", "")),
    )
    _validate(cfg)
    return cfg


def _validate(cfg: RunConfig) -> None:
    try:
        amb = Ambient.from_name(cfg.ambient)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    try:
        kind = SpeedKind(cfg.kind)
    except ValueError as exc:
        raise ConfigError(f"unknown kind {cfg.kind!r}; expected mean_power, scalar_power or gauss_power") from exc
    if kind is SpeedKind.SCALAR_POW and amb.c != HYPERBOLIC:
        raise ConfigError("scalar_power flow is only defined in hyperbolic space (c = -1)")
    if not cfg.alpha > 0:
        raise ConfigError("alpha must be positive")
    th0 = cfg.initial.theta0
    if not (th0 > 0 and th0 < amb.max_radius()):
        raise ConfigError(f"initial radius theta0={th0} must lie in (0, {amb.max_radius():.6g})"
                          + (" (strictly convex surfaces lie in an open hemisphere)" if amb.c == 1 else ""))
    it = cfg.integrator
    if it.scheme not in ("rk2", "rk4"):
        raise ConfigError("integrator.scheme must be 'rk2' or 'rk4'")
    if not (0 < it.theta_floor < th0):
        raise ConfigError("integrator.theta_floor must lie in (0, theta0)")
    if not (it.c_cfl > 0 and it.max_rel_change > 0):
        raise ConfigError("integrator.c_cfl and integrator.max_rel_change must be positive")
    if cfg.monitor.stride < 1:
        raise ConfigError("monitor.stride must be at least 1")
    try:
        grid = SphereGrid(cfg.grid.mode, cfg.grid.n_theta, cfg.grid.n_phi)
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}") from exc
    check_initial_surface(cfg, grid)


def build_initial_graph(cfg: RunConfig, grid: SphereGrid | None = None) -> RadialGraph:
    grid = grid or SphereGrid(cfg.grid.mode, cfg.grid.n_theta, cfg.grid.n_phi)
    amb = Ambient.from_name(cfg.ambient)
    amps = dict(cfg.initial.legendre)
    if cfg.initial.random_amplitude:
        rng = random.Random(cfg.seed)
        for ell in (2, 3, 4):
            amps[ell] = amps.get(ell, 0.0) + rng.uniform(-1, 1) * cfg.initial.random_amplitude
    return RadialGraph.legendre(amb, grid, cfg.initial.theta0, amps)


def check_initial_surface(cfg: RunConfig, grid: SphereGrid | None = None) -> None:
    """Reject initial data violating the hypotheses of the convergence theorems."""
    graph = build_initial_graph(cfg, grid)
    try:
        graph.validate()
    except ValueError as exc:
        raise ConfigError(f"initial surface: {exc}") from exc
    curv = curvature_field(graph)
    if graph.ambient.c == HYPERBOLIC:
        kmin = float(curv.K.min())
        if not kmin > 1:
            raise ConfigError(f"initial surface violates the positive scalar curvature hypothesis "
                              f"(min k1*k2 = {kmin:.6g} <= 1)")
    else:
        k2min = float(curv.k2.min())
        if not k2min > 0:
            raise ConfigError(f"initial surface is not strictly convex (min k2 = {k2min:.6g} <= 0)")


def _parse_error(exc: yaml.YAMLError) -> ConfigError:
    mark = getattr(exc, "problem_mark", None)
    problem = getattr(exc, "problem", None) or str(exc)
    if mark is not None:
        return ConfigError(f"parse error at line {mark.line + 1}, column {mark.column + 1}: {problem}")
    return ConfigError(f"parse error: {problem}")


def load_config(source: str | Path) -> RunConfig:
    """Load from a path or from inline YAML text."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source and "{" not in source
                                    and ":" not in source):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
    else:
        text = source
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise _parse_error(exc) from exc
    try:
        return _from_mapping(data or {})
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def _plain(obj):
    if dataclasses.is_dataclass(obj):
        return {f.name: _plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    return obj


def emit_config(cfg: RunConfig) -> str:
    """YAML text that loads back to an equal configuration."""
    data = _plain(cfg)
    # fractions as exact strings, floats as YAML floats so they load back unchanged
    data["alpha"] = _alpha_text(cfg.alpha) if isinstance(cfg.alpha, Fraction) else float(cfg.alpha)
    if data["integrator"]["t_max"] is not None and math.isinf(data["integrator"]["t_max"]):
        data["integrator"]["t_max"] = None
    header = "# lengths in geodesic units of the ambient space form\n"
    return header + yaml.safe_dump(data, sort_keys=False, default_flow_style=False)
