"""Command line front end.

Verbs: ``run``, ``sweep``, ``certify``, ``validate-config``, ``emit-examples``.

Output files of a run directory:

``series.csv``
    One row per kept record (every ``stride``-th accepted step, the initial state and the
    final state). Columns, all floats written with ``repr`` so that re-runs are byte-identical:

    ``t``           flow time
    ``tau``         rescaled time ``-log Theta(t)`` of the comparison sphere (nan before rescaling)
    ``dt``          step that produced the record (0 for the initial state)
    ``u_min``       smallest radial graph value
    ``u_max``       largest radial graph value
    ``k1_max``      largest principal curvature
    ``k2_min``      smallest principal curvature
    ``H_min``       smallest mean curvature ``k1 + k2``
    ``K_min``       smallest extrinsic Gauss curvature ``k1 k2``
    ``G_max``       largest value of the pinching quantity
    ``pinch_ratio`` largest ``k1 / k2``
    ``u_tilde_dev`` ``max |u / Theta - 1|``
    ``bound_K``     lower bound for ``K_min`` from the a priori estimate (nan if none)
    ``bound_H``     lower bound for ``H_min`` from the a priori estimate (nan if none)
    ``theta``       comparison sphere radius ``Theta(t)``

``report.txt``
    Config echo, summary, pass/fail ledger and events. Deterministic.

``timing.txt``
    Wall-clock statistics, kept apart so the other two files stay byte-stable.

Exit status: 0 when every ledger entry passes (or every certificate is certified),
1 when some assertion fails, 2 for configuration or usage errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from fractions import Fraction
from pathlib import Path

from .certify import case_label, certify_all, format_certificates
from .config import ConfigError, RunConfig, load_config, emit_config
from .runner import run, sweep, write_report

__all__ = ["main", "EXAMPLE_CONFIGS"]

EXAMPLE_CONFIGS = {
    "sphere_hyperbolic_mean.yaml": "ambient: hyperbolic\nkind: mean_power\nalpha: 2\n"
                                   "grid: {n_theta: 32}\ninitial: {theta0: 1.0}\n",
    "perturbed_hyperbolic_mean.yaml": "ambient: hyperbolic\nkind: mean_power\nalpha: 2\n"
                                      "grid: {n_theta: 64}\ninitial: {theta0: 0.5, legendre: {2: 0.05}}\n",
    "perturbed_hyperbolic_scalar.yaml": "ambient: hyperbolic\nkind: scalar_power\nalpha: 1/2\n"
                                        "grid: {n_theta: 64}\ninitial: {theta0: 0.5, legendre: {2: 0.05}}\n",
    "perturbed_hyperbolic_gauss.yaml": "ambient: hyperbolic\nkind: gauss_power\nalpha: 1/2\n"
                                       "grid: {n_theta: 64}\ninitial: {theta0: 0.5, legendre: {2: 0.05}}\n",
    "perturbed_spherical_mean.yaml": "ambient: spherical\nkind: mean_power\nalpha: 2\n"
                                     "grid: {n_theta: 64}\ninitial: {theta0: 0.6, legendre: {2: 0.06}}\n",
    "perturbed_spherical_gauss.yaml": "ambient: spherical\nkind: gauss_power\nalpha: 1/2\n"
                                      "grid: {n_theta: 64}\ninitial: {theta0: 0.6, legendre: {2: 0.06}}\n",
}


def _alpha_arg(text: str):
    try:
        return Fraction(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _alphas_arg(text: str):
    return [_alpha_arg(t) for t in text.split(",") if t.strip()]


def _apply_overrides(cfg: RunConfig, args) -> RunConfig:
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    if args.stride is not None:
        if args.stride < 1:
            raise ConfigError("stride must be a positive integer")
        cfg = dataclasses.replace(cfg, monitor=dataclasses.replace(cfg.monitor, stride=args.stride))
    if args.out_dir is not None:
        cfg = dataclasses.replace(cfg, out_dir=str(args.out_dir))
    if args.strict:
        cfg = cfg.strict()
    return cfg


def _print_ledger(report, dest: Path) -> None:
    status = "PASS" if report.passed else "FAIL"
    print(f"{report.config.label()}: {status} ({report.steps} steps) -> {dest}")
    for e in report.ledger:
        if not e.passed:
            print(f"  FAIL {e.name}: {e.detail}")


def _cmd_run(args) -> int:
    cfg = _apply_overrides(load_config(args.config[0]), args)
    report = run(cfg)
    out = Path(cfg.out_dir)
    write_report(report, out)
    _print_ledger(report, out)
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    base = [_apply_overrides(load_config(c), args) for c in args.config]
    configs = []
    for cfg in base:
        for a in args.alphas or [cfg.alpha]:
            c = dataclasses.replace(cfg, alpha=a, name="")
            # revalidate: the cone check and theorem hypotheses depend on alpha
            configs.append(load_config(emit_config(c)))
    root = Path(args.out_dir if args.out_dir is not None else base[0].out_dir)
    labels = [c.label() for c in configs]
    if len(set(labels)) != len(labels):
        raise ConfigError("sweep produces duplicate run labels; give the configs distinct names")
    reports = sweep(configs, workers=args.workers)
    failed = 0
    for report in reports:
        dest = root / report.config.label()
        write_report(report, dest)
        _print_ledger(report, dest)
        failed += not report.passed
    print(f"sweep: {len(reports) - failed}/{len(reports)} runs passed")
    return 1 if failed else 0


def _cmd_certify(args) -> int:
    start = time.perf_counter()
    summaries = certify_all()
    out = Path(args.out_dir if args.out_dir is not None else "out")
    out.mkdir(parents=True, exist_ok=True)
    (out / "certificates.txt").write_text(format_certificates(summaries))
    ok = True
    for s in summaries:
        print(f"{case_label(s.kind, s.c, 'theorem')}: {s.status}")
        ok &= s.status == "certified"
    print(f"certify: {time.perf_counter() - start:.2f} s -> {out / 'certificates.txt'}")
    return 0 if ok else 1


def _cmd_validate(args) -> int:
    for path in args.config:
        cfg = _apply_overrides(load_config(path), args)
        print(f"# {path}: valid")
        sys.stdout.write(emit_config(cfg))
    return 0


def _cmd_emit_examples(args) -> int:
    out = Path(args.out_dir if args.out_dir is not None else "configs")
    out.mkdir(parents=True, exist_ok=True)
    for name, text in EXAMPLE_CONFIGS.items():
        cfg = load_config(text)
        (out / name).write_text(emit_config(cfg))
        print(out / name)
    return 0


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out-dir", type=Path, default=None, help="output directory")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized perturbations")
    common.add_argument("--strict", action="store_true", help="divide monitor tolerances by 10")
    common.add_argument("--stride", type=int, default=None, help="keep every n-th accepted step")

    p = argparse.ArgumentParser(prog="curvflow", description="Curvature flows of radial graphs in space forms.")
    sub = p.add_subparsers(dest="verb", required=True)

    r = sub.add_parser("run", parents=[common], help="integrate one configuration")
    r.add_argument("--config", action="append", required=True, help="config file or inline YAML")
    r.set_defaults(func=_cmd_run)

    s = sub.add_parser("sweep", parents=[common], help="run configurations over several alpha values")
    s.add_argument("--config", action="append", required=True, help="config file(s); repeat for several")
    s.add_argument("--alphas", type=_alphas_arg, default=None, help="comma separated, e.g. 1,2,3,4 or 1/3,4")
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=_cmd_sweep)

    c = sub.add_parser("certify", parents=[common], help="certify the sign conditions of all theorem cases")
    c.set_defaults(func=_cmd_certify)

    v = sub.add_parser("validate-config", parents=[common], help="load, validate and echo configurations")
    v.add_argument("--config", action="append", required=True)
    v.set_defaults(func=_cmd_validate)

    e = sub.add_parser("emit-examples", parents=[common], help="write example configuration files")
    e.set_defaults(func=_cmd_emit_examples)
    return p


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if getattr(args, "config", None) and args.verb == "run" and len(args.config) > 1:
        print("error: run takes a single --config; use sweep for several", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
