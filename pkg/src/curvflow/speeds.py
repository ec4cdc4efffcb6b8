"""Speed functions ``F(kappa_1, kappa_2)`` and their derivatives.

Three families are supported:

* ``MEAN_POW``   ``f = H^alpha``            with ``H = k1 + k2``
* ``SCALAR_POW`` ``f = (K - 1)^alpha``      with ``K = k1 k2`` (hyperbolic ambient only)
* ``GAUSS_POW``  ``f = K^alpha``

Every function works elementwise on numpy arrays and also on exact
``fractions.Fraction`` scalars.  With a Fraction input and an integral
exponent the results stay exact.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .geometry import HYPERBOLIC, Ambient

__all__ = [
    "SpeedKind",
    "SpeedSpec",
    "SpeedJet",
    "ConeError",
    "speed_jet",
    "speed_value",
    "cone_margin",
    "euler_check",
    "THEOREM_RANGES",
]

DEFAULT_CONE_EPS = 1e-10


class SpeedKind(str, enum.Enum):
    MEAN_POW = "mean_power"
    SCALAR_POW = "scalar_power"
    GAUSS_POW = "gauss_power"


class ConeError(ValueError):
    """Curvatures outside the region where the speed is defined and parabolic."""


# Advisory alpha ranges of the main convergence theorems, keyed by (kind, c).
THEOREM_RANGES = {
    (SpeedKind.MEAN_POW, -1): (Fraction(1), Fraction(4)),
    (SpeedKind.SCALAR_POW, -1): (Fraction(1, 2), Fraction(1)),
    (SpeedKind.GAUSS_POW, -1): (Fraction(1, 2), Fraction(1)),
    (SpeedKind.MEAN_POW, 1): (Fraction(1), Fraction(5)),
    (SpeedKind.GAUSS_POW, 1): (Fraction(1, 2), Fraction(1)),
}


@dataclass(frozen=True)
class SpeedSpec:
    kind: SpeedKind
    alpha: float | Fraction
    ambient: Ambient
    cone_eps: float = DEFAULT_CONE_EPS

    def __post_init__(self):
        object.__setattr__(self, "kind", SpeedKind(self.kind))
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha!r}")
        if self.kind is SpeedKind.SCALAR_POW and self.ambient.c != HYPERBOLIC:
            raise ValueError("scalar_power flow is only defined in hyperbolic space")

    @property
    def homogeneity(self):
        """Degree of homogeneity of f, or None when f is not homogeneous."""
        if self.kind is SpeedKind.MEAN_POW:
            return self.alpha
        if self.kind is SpeedKind.GAUSS_POW:
            return 2 * self.alpha
        return None

    def in_theorem_range(self) -> bool:
        rng = THEOREM_RANGES.get((self.kind, self.ambient.c))
        return rng is not None and rng[0] <= self.alpha <= rng[1]


@dataclass(frozen=True)
class SpeedJet:
    """Value, gradient ``(f1, f2)`` and Hessian ``(f11, f22, f12)`` of the speed."""

    f: object
    df: tuple
    d2f: tuple


def _pow(x, a):
    """``x ** a`` that stays exact for Fraction bases and integral exponents."""
    if isinstance(x, Fraction):
        if Fraction(a).denominator == 1:
            return x ** int(a)
        return float(x) ** float(a)
    if isinstance(a, Fraction):
        a = int(a) if a.denominator == 1 else float(a)
    return np.power(x, a) if isinstance(x, np.ndarray) else x**a


def cone_margin(spec: SpeedSpec, k1, k2):
    """Smallest of the defining inequalities ``> 0`` for the speed's cone.

    Returns ``(margin, label)`` where ``margin`` has the shape of the inputs.
    """
    if spec.kind is SpeedKind.MEAN_POW:
        return k1 + k2, "H > 0"
    if spec.kind is SpeedKind.SCALAR_POW:
        return k1 * k2 - 1, "k1*k2 > 1"
    return np.minimum(k1, k2) if isinstance(k1, np.ndarray) else min(k1, k2), "k1 > 0 and k2 > 0"


def _check_cone(spec, k1, k2):
    margin, label = cone_margin(spec, k1, k2)
    bad = np.asarray(margin <= spec.cone_eps)
    if bad.any():
        idx = tuple(int(i) for i in np.argwhere(bad)[0]) if bad.ndim else ()
        raise ConeError(f"curvature outside the speed cone ({label} violated"
                        + (f" at node {idx}" if idx else "") + ")")


def _alpha_for(spec: SpeedSpec, x):
    # exact exponent only for exact inputs; floats keep numpy arithmetic fast
    return spec.alpha if isinstance(x, Fraction) else float(spec.alpha)


def speed_value(spec: SpeedSpec, k1, k2):
    _check_cone(spec, k1, k2)
    a = _alpha_for(spec, k1)
    if spec.kind is SpeedKind.MEAN_POW:
        return _pow(k1 + k2, a)
    if spec.kind is SpeedKind.SCALAR_POW:
        return _pow(k1 * k2 - 1, a)
    return _pow(k1 * k2, a)


def speed_jet(spec: SpeedSpec, kappa) -> SpeedJet:
    """Closed-form ``f``, first and second derivatives at ``kappa = (k1, k2)``."""
    k1, k2 = kappa
    _check_cone(spec, k1, k2)
    a = _alpha_for(spec, k1)
    if spec.kind is SpeedKind.MEAN_POW:
        H = k1 + k2
        f = _pow(H, a)
        d1 = a * _pow(H, a - 1)
        d2 = a * (a - 1) * _pow(H, a - 2)
        return SpeedJet(f, (d1, d1), (d2, d2, d2))
    if spec.kind is SpeedKind.SCALAR_POW:
        D = k1 * k2 - 1
        f = _pow(D, a)
        p1 = a * _pow(D, a - 1)
        p2 = a * (a - 1) * _pow(D, a - 2)
        return SpeedJet(f, (p1 * k2, p1 * k1), (p2 * k2 * k2, p2 * k1 * k1, p2 * k1 * k2 + p1))
    K = k1 * k2
    f = _pow(K, a)
    return SpeedJet(
        f,
        (a * f / k1, a * f / k2),
        (a * (a - 1) * f / (k1 * k1), a * (a - 1) * f / (k2 * k2), a * a * _pow(K, a - 1)),
    )


def euler_check(spec: SpeedSpec, kappa):
    """Residual ``f1 k1 + f2 k2 - deg * f`` of the Euler relation for homogeneous speeds."""
    deg = spec.homogeneity
    if deg is None:
        raise ValueError(f"{spec.kind.value} speed is not homogeneous; the Euler relation does not apply")
    k1, k2 = kappa
    jet = speed_jet(spec, kappa)
    if not isinstance(k1, Fraction):
        deg = float(deg)
    return jet.df[0] * k1 + jet.df[1] * k2 - deg * jet.f
