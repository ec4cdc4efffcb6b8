"""Contracting curvature flows of radial graphs in the space forms of curvature -1, 0 and +1."""

from .config import RunConfig, load_config, emit_config
from .geometry import Ambient, RadialGraph, SphereGrid, curvature_field
from .integrator import run_flow, solve_spherical, step
from .runner import run, sweep
from .speeds import SpeedKind, SpeedSpec

__all__ = ["Ambient", "RadialGraph", "RunConfig", "SpeedKind", "SpeedSpec", "SphereGrid",
           "curvature_field", "emit_config", "load_config", "run", "run_flow", "solve_spherical",
           "step", "sweep"]
__version__ = "0.1.0"
