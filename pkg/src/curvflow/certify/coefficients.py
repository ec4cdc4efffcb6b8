"""Gradient-term coefficients of the pinching-quantity evolution.

At a spatial maximum of the pinching quantity ``G = g(k1, k2)`` the gradient
terms reduce to ``Z T1^2 + Z' T2^2`` where ``Z'`` is ``Z`` with the two
curvatures exchanged.  For each flow the sign of ``Z`` is governed by a
polynomial ``a1(alpha, k1, k2)`` obtained from ``Z`` by a positive rescaling.
This module holds

* exact transcriptions of those polynomials (``coeff_a1``),
* the closed form of ``Z`` for ``G = (k1-k2)^2 f^2 / (K-1)^2`` in hyperbolic
  space (``gradient_Z``),
* the general expression of ``Z`` from the derivatives of ``f`` and ``g``
  (``general_Z``), evaluated with a small second-order jet arithmetic so the
  derivatives of ``g`` are produced by the product rule, not transcribed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..speeds import SpeedJet, SpeedKind, SpeedSpec, speed_jet, _pow
from ..geometry import Ambient
from .poly import RationalPoly, alpha as A, k1 as X, k2 as Y

__all__ = [
    "UnsupportedCase",
    "Jet2",
    "GradientFrame",
    "coeff_a1",
    "a2_from_a1",
    "frame_beta_gamma",
    "gradient_frame",
    "gradient_Z",
    "general_Z",
    "pinching_g_jet",
    "rescaled_a1",
    "CASES",
]


class UnsupportedCase(ValueError):
    """The requested (kind, ambient) pair has no coefficient polynomial."""


_K = X * Y
_D = _K - 1

_A1 = {
    (SpeedKind.MEAN_POW, -1): (
        4 * (X - Y) ** 2 * _D**3 * A**2
        - (X - Y) * (X + Y) * (
            (3 * Y**2 + 1) * X**4 + 4 * Y * (Y**2 - 3) * X**3 + 2 * (-3 * Y**4 + Y**2 + 2) * X**2
            + 4 * Y * (Y**4 - Y**2 + 2) * X + (-(Y**6) + Y**4 - 4)
        ) * A
        + (X + Y) * (Y**2 - 1) * (
            X**5 - Y * X**4 + (4 - 6 * Y**2) * X**3 + 2 * Y**3 * X**2 + (-3 * Y**4 + 12 * Y**2 - 8) * X - Y**5
        )
    ),
    (SpeedKind.SCALAR_POW, -1): (
        4 * X * Y**2 * (X - Y) ** 2 * A**2
        + (X - Y) * (X**2 - 2 * X * Y + 5 * Y**2 - 5 * X**2 * Y**2 + 2 * X * Y**3 - Y**4) * A
        + (Y**2 - 1) * (X**3 + 4 * Y - 3 * X**2 * Y - X * Y**2 - Y**3)
    ),
    (SpeedKind.GAUSS_POW, -1): (
        4 * Y * (X - Y) ** 2 * _D**2 * A**2
        + (X - Y) * _D * (X**2 * (1 - 5 * Y**2) - 2 * X * (Y - Y**3) + (5 * Y**2 - Y**4)) * A
        + (Y**2 - 1) * (X**4 * Y + X**3 * (1 - 3 * Y**2) + X**2 * (Y - Y**3) + X * (3 * Y**2 - Y**4) - Y**3)
    ),
    (SpeedKind.GAUSS_POW, 1): (
        Y**3 * (A - 1) + X**3 * (A - 1) * (4 * A - 1) + X * Y**2 * (A - 1) * (4 * A + 1)
        + X**2 * Y * (-3 + 7 * A - 8 * A**2)
    ),
}

#: Cases with a coefficient polynomial, in report order.
CASES = tuple(_A1)


def coeff_a1(kind, c: int) -> RationalPoly:
    """Polynomial ``a1(alpha, k1, k2)`` whose sign is that of ``Z`` for the given flow.

    For ``gauss_power`` in the sphere this is the bracketed cubic factor of
    ``Z = 2 alpha K^(3 alpha - 1) k1^-2 * a1``.
    """
    key = (SpeedKind(kind), int(c))
    if key not in _A1:
        raise UnsupportedCase(
            f"no gradient coefficient polynomial for {key[0].value} with c = {c}; "
            "the mean_power sphere case rests on the Euclidean gradient estimate and is not certified here"
        )
    return _A1[key]


def a2_from_a1(p: RationalPoly) -> RationalPoly:
    """Coefficient of ``T2^2``: the ``T1^2`` coefficient with ``k1`` and ``k2`` exchanged."""
    return p.swap_kappa()


@dataclass(frozen=True)
class Jet2:
    """Value, gradient and Hessian of a function of ``(k1, k2)`` at one point."""

    v: object
    d1: object
    d2: object
    d11: object
    d22: object
    d12: object

    @classmethod
    def const(cls, c):
        return cls(c, 0, 0, 0, 0, 0)

    @classmethod
    def from_speed(cls, jet: SpeedJet) -> "Jet2":
        return cls(jet.f, jet.df[0], jet.df[1], *jet.d2f)

    @classmethod
    def variables(cls, k1, k2) -> tuple["Jet2", "Jet2"]:
        return cls(k1, 1, 0, 0, 0, 0), cls(k2, 0, 1, 0, 0, 0)

    def _lift(self, o):
        return o if isinstance(o, Jet2) else Jet2.const(o)

    def __add__(self, o):
        o = self._lift(o)
        return Jet2(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2,
                    self.d11 + o.d11, self.d22 + o.d22, self.d12 + o.d12)

    __radd__ = __add__

    def __neg__(self):
        return Jet2(-self.v, -self.d1, -self.d2, -self.d11, -self.d22, -self.d12)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Jet2(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + self.v * o.d2,
            self.d11 * o.v + 2 * self.d1 * o.d1 + self.v * o.d11,
            self.d22 * o.v + 2 * self.d2 * o.d2 + self.v * o.d22,
            self.d12 * o.v + self.d1 * o.d2 + self.d2 * o.d1 + self.v * o.d12,
        )

    __rmul__ = __mul__

    def __pow__(self, n):
        p0 = _pow(self.v, n)
        p1 = n * _pow(self.v, n - 1)
        p2 = n * (n - 1) * _pow(self.v, n - 2)
        return Jet2(
            p0,
            p1 * self.d1,
            p1 * self.d2,
            p2 * self.d1 * self.d1 + p1 * self.d11,
            p2 * self.d2 * self.d2 + p1 * self.d22,
            p2 * self.d1 * self.d2 + p1 * self.d12,
        )


def pinching_g_jet(spec: SpeedSpec, kappa) -> Jet2:
    """Jet of the pinching quantity ``g`` monitored for ``spec`` (see ``monitors.pinching_G``).

    Hyperbolic space: ``g = (k1-k2)^2 f^2 / (K-1)^2``.  Sphere and Euclidean
    space: ``g = (k1-k2)^2 f^2 / K^2``.
    """
    u, w = Jet2.variables(*kappa)
    f = Jet2.from_speed(speed_jet(spec, kappa))
    d = u - w
    denom = u * w - 1 if spec.ambient.c == -1 else u * w
    return d * d * f * f * denom ** (-2)


@dataclass(frozen=True)
class GradientFrame:
    """Gradient-frame quantities at a maximum point of ``G``.

    ``beta`` and ``gamma`` are proportional to the two first derivatives of
    ``g``; ``T1sq`` and ``T2sq`` are the normalized squared gradients so that
    the gradient terms read ``Z T1sq + Z' T2sq``.
    """

    beta: object
    gamma: object
    T1sq: object = None
    T2sq: object = None


def frame_beta_gamma(jet: SpeedJet, kappa) -> tuple:
    """``beta`` and ``gamma`` for ``G = (k1-k2)^2 f^2/(K-1)^2`` in hyperbolic space."""
    k1, k2 = kappa
    D = k1 * k2 - 1
    beta = (k1 - k2) * D * jet.df[0] + (k2 * k2 - 1) * jet.f
    gamma = (k1 - k2) * D * jet.df[1] - (k1 * k1 - 1) * jet.f
    return beta, gamma


def gradient_frame(jet: SpeedJet, kappa, grad_h) -> GradientFrame:
    """Frame from the derivatives ``grad_h = (D1h11, D1h22, D2h11, D2h22)``.

    The gradients are assumed to satisfy the critical-point conditions of
    ``G``; the normalization follows whichever of ``gamma``, ``beta`` is
    nonzero.
    """
    beta, gamma = frame_beta_gamma(jet, kappa)
    d1h11, d1h22, d2h11, d2h22 = grad_h
    if gamma != 0:
        T1sq, T2sq = d1h11**2 / gamma**2, d1h22**2 / gamma**2
    elif beta != 0:
        T1sq, T2sq = d1h22**2 / beta**2, d2h22**2 / beta**2
    else:
        raise ValueError("beta and gamma both vanish; the gradient frame is degenerate")
    return GradientFrame(beta, gamma, T1sq, T2sq)


def gradient_Z(jet: SpeedJet, kappa, beta, gamma):
    """Closed form of ``Z`` for ``G = (k1-k2)^2 f^2/(K-1)^2`` in hyperbolic space."""
    k1, k2 = kappa
    if k1 == k2:
        raise ValueError("Z is undefined at umbilic points (k1 == k2)")
    f = jet.f
    f1, f2 = jet.df
    f11, f22, f12 = jet.d2f
    D = k1 * k2 - 1
    d = k1 - k2
    a = k2 * k2 - 1
    b = k1 * k1 - 1
    t1 = 2 * d * a * f * f / D**3 * (f11 * gamma**2 + f22 * beta**2 - 2 * f12 * gamma * beta)
    t2 = 4 * f * f * (b * f1 + a * f2) / D * (-2 * d * f * f1 - a * a * f * f / D**2 + d * d * f1 * f2)
    t3 = 4 * d * d * f * f * f1 / D * (-2 * d * a * f * f2 / D + b * a * f * f / D**2 - d * d * f1 * f2)
    return t1 + t2 + t3


def general_Z(jet: SpeedJet, g: Jet2, kappa, beta, gamma):
    """``Z`` from the first and second derivatives of ``f`` and ``g`` (any ambient)."""
    k1, k2 = kappa
    if k1 == k2:
        raise ValueError("Z is undefined at umbilic points (k1 == k2)")
    f1, f2 = jet.df
    f11, f22, f12 = jet.d2f
    cross = 2 * (g.d1 * f2 - g.d2 * f1) / (k2 - k1)
    return ((g.d1 * f11 - f1 * g.d11) * gamma**2
            - 2 * (g.d1 * f12 - f1 * g.d12) * beta * gamma
            + (g.d1 * f22 - f1 * g.d22 + cross) * beta**2)


def rescaled_a1(kind, c: int, alpha, kappa, via: str = "closed"):
    """``a1`` computed from ``Z`` by the case's positive rescaling.

    ``via='closed'`` uses ``gradient_Z`` (hyperbolic cases only) and
    ``via='general'`` uses ``general_Z`` with the jet of ``g``.  With Fraction
    inputs and integral exponents the result is exact.
    """
    kind = SpeedKind(kind)
    spec = SpeedSpec(kind, alpha, Ambient(c))
    k1, k2 = kappa
    jet = speed_jet(spec, kappa)
    if c == 1:
        if kind is not SpeedKind.GAUSS_POW:
            raise UnsupportedCase("only gauss_power has a coefficient polynomial in the sphere")
        beta = k2 * (k2 + (k1 - k2) * alpha)
        gamma = k1 * (-k1 + (k1 - k2) * alpha)
        Z = general_Z(jet, pinching_g_jet(spec, kappa), kappa, beta, gamma)
        return Z * k1 * k1 / (2 * alpha * _pow(k1 * k2, 3 * alpha - 1))
    beta, gamma = frame_beta_gamma(jet, kappa)
    if via == "closed":
        Z = gradient_Z(jet, kappa, beta, gamma)
    else:
        Z = general_Z(jet, pinching_g_jet(spec, kappa), kappa, beta, gamma)
    D = k1 * k2 - 1
    if kind is SpeedKind.MEAN_POW:
        return D**3 * Z / (2 * alpha * _pow(k1 + k2, 5 * alpha - 3))
    if kind is SpeedKind.SCALAR_POW:
        return Z / (2 * alpha * _pow(D, 5 * alpha - 3))
    return D**2 * Z / (2 * alpha * _pow(k1 * k2, 5 * alpha - 2))
