"""Measured decay rate of the pinching excess for the mean-power flow in hyperbolic space.

Near the round point the l = 2 mode of the rescaled graph decays like
exp(-(2 alpha - 1) tau), so log(max k1/k2 - 1) has slope about 1 - 2 alpha.
The estimate -(alpha - 1) used in the convergence proof is an upper bound on
that slope, not its value.
"""

from fractions import Fraction

from curvflow import load_config, run
from curvflow.monitors import pinch_decay_check

print(f"{'alpha':>6} {'fitted slope':>13} {'1 - 2 alpha':>12} {'1 - alpha':>10}")
for a in (Fraction(1), Fraction(2), Fraction(3)):
    cfg = load_config(f"ambient: hyperbolic\nkind: mean_power\nalpha: {a}\ngrid: {{n_theta: 48}}\n"
                      "initial: {theta0: 0.5, legendre: {2: 0.05}}\nmonitor: {stride: 20}\n")
    report = run(cfg)
    fit = pinch_decay_check(report.records, a, tau_min=1.5)
    print(f"{str(a):>6} {fit.slope:13.3f} {float(1 - 2 * a):12.1f} {float(1 - a):10.1f}")
