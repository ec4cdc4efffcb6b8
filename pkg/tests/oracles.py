"""Independent reference computations used only by the tests."""

from __future__ import annotations

import numpy as np


def _model_point(c, r, x):
    """Embed geodesic polar coordinates (r, x in S^2) into the standard model of R^3(c)."""
    if c == -1:
        return np.concatenate([[np.cosh(r)], np.sinh(r) * x])
    if c == 1:
        return np.concatenate([[np.cos(r)], np.sin(r) * x])
    return r * x


def _inner(c, a, b):
    if c == -1:
        return -a[0] * b[0] + a[1:] @ b[1:]
    return a @ b


def _direction(theta, phi):
    return np.array([np.sin(theta) * np.cos(phi), np.sin(theta) * np.sin(phi), np.cos(theta)])


def embedded_shape_operator(c, ufunc, theta, phi, eps=1e-3):
    """Shape operator of ``r = ufunc(theta, phi)`` from the embedding in R^{1,3}, R^4 or R^3.

    Tangent and second derivative vectors are taken with fourth-order finite
    differences of the embedding map, the unit normal is orthogonal to the
    position vector (for c != 0) and to the tangent plane, and oriented away
    from the center.  Returns ``(W, v)`` with ``W[j, i] = h_i^j`` in (theta, phi)
    coordinates and ``v`` the ratio ``sqrt(det g) / (sn(u)^2 sin(theta))``.
    """

    def Y(t, p):
        return _model_point(c, ufunc(t, p), _direction(t, p))

    def d1(f, k):
        def g(t, p):
            e = np.array([eps, 0.0]) if k == 0 else np.array([0.0, eps])
            a = lambda s: f(t + s * e[0], p + s * e[1])
            return (-a(2) + 8 * a(1) - 8 * a(-1) + a(-2)) / (12 * eps)
        return g

    Yt, Yp = d1(Y, 0), d1(Y, 1)
    Ytt, Ytp, Ypp = d1(Yt, 0), d1(Yt, 1), d1(Yp, 1)
    y = Y(theta, phi)
    T = [Yt(theta, phi), Yp(theta, phi)]
    D2 = [[Ytt(theta, phi), Ytp(theta, phi)], [Ytp(theta, phi), Ypp(theta, phi)]]
    g = np.array([[_inner(c, a, b) for b in T] for a in T])
    # normal: solve the orthogonality conditions by Gram-Schmidt on a radial seed
    r = ufunc(theta, phi)
    x = _direction(theta, phi)
    if c == -1:
        seed = np.concatenate([[np.sinh(r)], np.cosh(r) * x])
    elif c == 1:
        seed = np.concatenate([[-np.sin(r)], np.cos(r) * x])
    else:
        seed = x.copy()
    basis = ([y] if c != 0 else []) + T
    G = np.array([[_inner(c, a, b) for b in basis] for a in basis])
    rhs = np.array([_inner(c, seed, b) for b in basis])
    coef = np.linalg.solve(G, rhs)
    n = seed - sum(cf * b for cf, b in zip(coef, basis))
    n = n / np.sqrt(_inner(c, n, n))
    h = -np.array([[_inner(c, D2[i][j], n) for j in range(2)] for i in range(2)])
    W = np.linalg.solve(g, h)  # W = g^{-1} h, so W[j, i] = h_i^j
    sn = {-1: np.sinh, 1: np.sin, 0: lambda s: s}[c](r)
    v = np.sqrt(np.linalg.det(g)) / (sn**2 * np.sin(theta))
    return W, v
