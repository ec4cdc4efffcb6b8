"""Run orchestration: single runs, alpha sweeps, reports and output files."""

from __future__ import annotations

import dataclasses
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import RunConfig, build_initial_graph, emit_config
from .integrator import (FlowAborted, StopRule, extinction_time_from, initial_state, run_flow,
                         sphere_with_extinction)
from .monitors import (G_RANGES, PINCH_RANGES, MonitorRecord, PinchFit, _in, assemble_record,
                       pinch_decay_check)
from .speeds import THEOREM_RANGES, SpeedKind

__all__ = ["LedgerEntry", "RunReport", "run", "sweep", "emit_series", "format_report", "write_report",
           "estimate_extinction", "SERIES_COLUMNS"]

SERIES_COLUMNS = ("t", "tau", "dt", "u_min", "u_max", "k1_max", "k2_min", "H_min", "K_min", "G_max",
                  "pinch_ratio", "u_tilde_dev", "bound_K", "bound_H", "theta")


@dataclass(frozen=True)
class LedgerEntry:
    name: str
    passed: bool
    detail: str
    tolerance: str = ""


@dataclass
class RunReport:
    config: RunConfig
    records: list[MonitorRecord]
    ledger: list[LedgerEntry]
    summary: dict
    events: list[str] = field(default_factory=list)
    wall_seconds: float = 0.0
    steps: int = 0

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.ledger)


def _fmt(x) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return repr(x)
    return str(x)


def estimate_extinction(records: Sequence[MonitorRecord], cfg: RunConfig) -> float:
    """Extinction time from the tail: mean of ``t + E(min u)`` over the final records.

    ``E(r)`` is the extinction time of a geodesic sphere of radius ``r``; the
    final records are those with ``min u`` within a factor two of the floor.
    """
    spec = cfg.speed
    floor = cfg.integrator.theta_floor
    tail = [r for r in records if r.u_min <= 2 * floor] or list(records[-1:])
    vals = [r.t + extinction_time_from(spec.ambient, spec, r.u_min) for r in tail]
    return float(np.mean(vals))


def _fill_rescaled(records: list[MonitorRecord], cfg: RunConfig, T: float) -> list[MonitorRecord]:
    spec = cfg.speed
    sph = sphere_with_extinction(spec.ambient, spec, T, theta_floor=cfg.integrator.theta_floor / 4)
    out = []
    for r in records:
        if r.t >= T:
            out.append(r)
            continue
        th = sph.theta(r.t)
        dev = max(abs(r.u_max / th - 1), abs(r.u_min / th - 1))
        rec = dataclasses.replace(r, tau=-math.log(th), theta=th, u_tilde_dev=dev)
        rec.checks.update(r.checks)
        out.append(rec)
    return out


def run(cfg: RunConfig) -> RunReport:
    """Integrate one configuration, monitor every accepted step and build the ledger."""
    start = time.perf_counter()
    spec = cfg.speed
    state0 = initial_state(build_initial_graph(cfg), spec)
    it, mon = cfg.integrator, cfg.monitor
    rule = StopRule(theta_floor=it.theta_floor, t_max=math.inf if it.t_max is None else it.t_max,
                    max_steps=it.max_steps, c_cfl=it.c_cfl, max_rel_change=it.max_rel_change,
                    scheme=it.scheme)
    kept: list[MonitorRecord] = []
    failures: dict[str, list[str]] = {}
    stats = {"pinch_max": 1.0, "radius_max": 0.0, "G_increase_max": 0.0}
    ctx = {"prev": None, "init": None, "last": None, "steps": 0}

    def on_step(state):
        rec = assemble_record(state, previous=ctx["prev"], initial=ctx["init"], tol_rel=mon.tol_G_rel,
                              tol_abs=mon.tol_G_abs, bound_slack=mon.bound_slack)
        if ctx["init"] is None:
            ctx["init"] = rec
        for name, ok in rec.checks.items():
            if not ok:
                failures.setdefault(name, []).append(f"t={rec.t!r}")
        if ctx["prev"] is not None and not math.isnan(rec.G_max):
            stats["G_increase_max"] = max(stats["G_increase_max"], rec.G_max - ctx["prev"].G_max)
        stats["pinch_max"] = max(stats["pinch_max"], rec.pinch_ratio)
        stats["radius_max"] = max(stats["radius_max"], rec.radius_ratio)
        if state.step_count % mon.stride == 0:
            kept.append(rec)
        ctx["prev"] = ctx["last"] = rec
        ctx["steps"] = state.step_count

    events: list[str] = []
    reason = ""
    try:
        traj = run_flow(state0, rule, on_step)
        events, reason, steps = traj.events, traj.reason, traj.steps
    except FlowAborted as exc:
        events.append(f"aborted: {exc}")
        reason, steps = "aborted", ctx["steps"]
    if kept and kept[-1] is not ctx["last"]:
        kept.append(ctx["last"])
    init = ctx["init"]
    T = estimate_extinction(kept, cfg) if reason == "theta_floor" else math.nan
    if math.isfinite(T):
        kept = _fill_rescaled(kept, cfg, T)
    final = kept[-1]
    first = kept[0]
    ledger = _ledger(cfg, reason, failures, stats, first, final, init)
    fit = pinch_decay_check(kept, spec.alpha) if (spec.kind is SpeedKind.MEAN_POW and spec.ambient.c == -1) else None
    summary = {
        "stop_reason": reason,
        "steps": steps,
        "t_final": final.t,
        "T_estimate": T,
        "u_tilde_dev_initial": first.u_tilde_dev,
        "u_tilde_dev_final": final.u_tilde_dev,
        "pinch_ratio_initial": init.pinch_ratio,
        "pinch_ratio_max": stats["pinch_max"],
        "radius_ratio_initial": init.radius_ratio,
        "radius_ratio_max": stats["radius_max"],
        "G_max_initial": init.G_max,
        "G_increase_max": stats["G_increase_max"],
        "pinch_slope": fit.slope if fit else math.nan,
        "pinch_trivial": fit.trivially_pinched if fit else False,
    }
    return RunReport(cfg, kept, ledger, summary, events, time.perf_counter() - start, steps)


def _ledger(cfg, reason, failures, stats, first, final, init) -> list[LedgerEntry]:
    spec, mon = cfg.speed, cfg.monitor
    key = (spec.kind, spec.ambient.c)
    out = [LedgerEntry("reached_floor", reason == "theta_floor", f"stop reason {reason}")]
    out.append(LedgerEntry("cone_preserved", "cone" not in failures,
                           "; ".join(failures.get("cone", [])[:3]) or "every accepted step inside the cone"))
    for name in ("bound_K", "bound_H"):
        if name in init.checks:
            out.append(LedgerEntry(f"{name}_dominance", name not in failures,
                                   "; ".join(failures.get(name, [])[:3]) or "bound respected at every accepted step",
                                   f"slack {mon.bound_slack!r}"))
    if _in(G_RANGES.get(key), spec.alpha):
        out.append(LedgerEntry("G_monotone", "G_monotone" not in failures,
                               f"largest per-step increase {stats['G_increase_max']!r}",
                               f"{mon.tol_G_rel!r}*G_max(0) + {mon.tol_G_abs!r}"))
    if _in(PINCH_RANGES.get(key), spec.alpha):
        lim = mon.pinch_factor * init.pinch_ratio
        out.append(LedgerEntry("pinching_constancy", stats["pinch_max"] <= lim,
                               f"max k1/k2 {stats['pinch_max']!r} vs limit {lim!r}", f"factor {mon.pinch_factor!r}"))
    lim = mon.radius_factor * init.radius_ratio
    out.append(LedgerEntry("radius_ratio_bounded", stats["radius_max"] <= lim,
                           f"max radius ratio {stats['radius_max']!r} vs limit {lim!r}", f"factor {mon.radius_factor!r}"))
    perturbed = bool(cfg.initial.legendre) or cfg.initial.random_amplitude > 0
    if not perturbed:
        out.append(LedgerEntry("umbilic", stats["pinch_max"] - 1 <= 1e-10,
                               f"max k1/k2 - 1 = {stats['pinch_max'] - 1!r}", "1e-10"))
    elif _in(THEOREM_RANGES.get(key), spec.alpha) and reason == "theta_floor":
        ok = final.u_tilde_dev <= mon.contraction * first.u_tilde_dev
        out.append(LedgerEntry("u_tilde_contraction", ok,
                               f"max|u~-1| {first.u_tilde_dev!r} -> {final.u_tilde_dev!r}",
                               f"factor {mon.contraction!r}"))
    return out


def _run_quiet(cfg):
    return run(cfg)


def sweep(configs: Sequence[RunConfig], workers: int = 1) -> list[RunReport]:
    """Run independent configurations, optionally in worker processes; order is preserved."""
    if workers <= 1 or len(configs) <= 1:
        return [run(c) for c in configs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_quiet, configs))


def emit_series(report: RunReport, path: Path) -> Path:
    """Comma-separated time series, one row per kept record, fixed header."""
    path = Path(path)
    lines = [",".join(SERIES_COLUMNS)]
    for r in report.records:
        lines.append(",".join(_fmt(float(getattr(r, c))) for c in SERIES_COLUMNS))
    path.write_text("\n".join(lines) + "\n")
    return path


def format_report(report: RunReport) -> str:
    out = ["[config]", emit_config(report.config).rstrip(), "", "[summary]"]
    for k, v in report.summary.items():
        out.append(f"{k}: {_fmt(v)}")
    out += ["", "[ledger]"]
    for e in report.ledger:
        out.append(f"{e.name}: {'PASS' if e.passed else 'FAIL'} | {e.detail}" + (f" | tolerance {e.tolerance}" if e.tolerance else ""))
    out.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    out += ["", "[events]"]
    out += report.events[:200] or ["none"]
    return "\n".join(out) + "\n"


def write_report(report: RunReport, out_dir: Path) -> None:
    """``series.csv`` and ``report.txt`` (deterministic) plus ``timing.txt`` (wall clock)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    emit_series(report, out_dir / "series.csv")
    (out_dir / "report.txt").write_text(format_report(report))
    (out_dir / "timing.txt").write_text(f"wall_seconds: {report.wall_seconds:.3f}\nsteps: {report.steps}\n"
                                        f"steps_per_second: {report.steps / max(report.wall_seconds, 1e-9):.1f}\n")
