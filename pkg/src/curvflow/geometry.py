"""Space forms, the discretized 2-sphere and radial graphs.

A closed star-shaped surface in the space form of curvature ``c`` is written
as the graph ``r = u(x)`` over the unit sphere of directions at a center
point, using geodesic polar coordinates ``dr^2 + sn_c(r)^2 sigma``.  All
lengths are geodesic lengths of the ambient space.

The Weingarten map of such a graph is

    h_i^j = -(1 / (v sn u)) (sigma^{jk} - phi^j phi^k / v^2) phi_{;ki}
            + (ct u / v) delta_i^j,

where ``phi_i = u_i / sn(u)``, ``v^2 = 1 + |D phi|^2_sigma`` and ``;``
denotes the Levi-Civita connection of the round metric ``sigma``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Ambient",
    "SphereGrid",
    "RadialGraph",
    "CurvatureField",
    "GeometryError",
    "slope_factor",
    "weingarten",
    "weingarten_field",
    "slope_factors",
    "principal_curvatures",
    "curvature_field",
]

HYPERBOLIC, EUCLIDEAN, SPHERICAL = -1, 0, 1
_NAMES = {HYPERBOLIC: "hyperbolic", EUCLIDEAN: "euclidean", SPHERICAL: "spherical"}


class GeometryError(ValueError):
    """Raised on non-finite or out-of-range graph data."""


@dataclass(frozen=True)
class Ambient:
    """Simply connected 3-dimensional space form of sectional curvature ``c``."""

    c: int

    def __post_init__(self):
        if self.c not in _NAMES:
            raise ValueError(f"ambient curvature must be -1, 0 or 1, got {self.c!r}")

    @classmethod
    def from_name(cls, name: str) -> "Ambient":
        for c, n in _NAMES.items():
            if name == n:
                return cls(c)
        raise ValueError(f"unknown ambient {name!r}; expected one of {sorted(_NAMES.values())}")

    @property
    def name(self) -> str:
        return _NAMES[self.c]

    def sn(self, r):
        if self.c == HYPERBOLIC:
            return np.sinh(r)
        if self.c == SPHERICAL:
            return np.sin(r)
        return np.asarray(r, dtype=float) * 1.0

    def cs(self, r):
        if self.c == HYPERBOLIC:
            return np.cosh(r)
        if self.c == SPHERICAL:
            return np.cos(r)
        return np.ones_like(np.asarray(r, dtype=float))

    def ct(self, r):
        if self.c == HYPERBOLIC:
            return 1.0 / np.tanh(r)
        if self.c == SPHERICAL:
            return 1.0 / np.tan(r)
        return 1.0 / np.asarray(r, dtype=float)

    def max_radius(self) -> float:
        """Upper limit for radii of strictly convex graphs (a hemisphere in S^3)."""
        return np.pi / 2 if self.c == SPHERICAL else np.inf


@dataclass(frozen=True)
class SphereGrid:
    """Uniform staggered (theta, phi) grid on S^2 with the poles excluded.

    Nodes sit at ``theta_j = (j + 1/2) * pi / n_theta``.  In axisymmetric mode
    there is a single azimuthal node and all phi-derivatives vanish.  In full
    mode ``n_phi`` must be even so that the ghost row across each pole is the
    node row rotated by half a turn.
    """

    mode: str = "axisymmetric"
    n_theta: int = 64
    n_phi: int = 1
    theta: np.ndarray = field(init=False, repr=False, compare=False)
    phi: np.ndarray = field(init=False, repr=False, compare=False)
    _cache: dict = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        if self.mode not in ("axisymmetric", "full"):
            raise ValueError(f"grid mode must be 'axisymmetric' or 'full', got {self.mode!r}")
        if self.n_theta < 16:
            raise ValueError("n_theta must be at least 16")
        if self.mode == "axisymmetric" and self.n_phi != 1:
            raise ValueError("axisymmetric grids have n_phi = 1")
        if self.mode == "full" and (self.n_phi < 4 or self.n_phi % 2):
            raise ValueError("full grids need an even n_phi >= 4")
        h = np.pi / self.n_theta
        object.__setattr__(self, "theta", (np.arange(self.n_theta) + 0.5) * h)
        object.__setattr__(self, "phi", np.arange(self.n_phi) * (2 * np.pi / self.n_phi))
        th, ph = np.meshgrid(self.theta, self.phi, indexing="ij")
        for a in (th, ph):
            a.setflags(write=False)
        object.__setattr__(self, "_cache", {"mesh": (th, ph), "sin": np.sin(th), "cos": np.cos(th)})

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_theta, self.n_phi)

    @property
    def h_theta(self) -> float:
        return np.pi / self.n_theta

    @property
    def h_phi(self) -> float:
        return 2 * np.pi / self.n_phi

    @property
    def h_min(self) -> float:
        """Smallest metric spacing on the unit sphere (sets the explicit time step)."""
        if self.mode == "axisymmetric":
            return self.h_theta
        return min(self.h_theta, np.sin(self.theta[0]) * self.h_phi)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return self._cache["mesh"]

    @property
    def sin_theta(self) -> np.ndarray:
        return self._cache["sin"]

    @property
    def cos_theta(self) -> np.ndarray:
        return self._cache["cos"]

    def directions(self) -> np.ndarray:
        """Unit vectors in R^3 for every node, shape ``(n_theta, n_phi, 3)``."""
        if "dirs" not in self._cache:
            th, ph = self.mesh()
            d = np.stack([np.sin(th) * np.cos(ph), np.sin(th) * np.sin(ph), np.cos(th)], axis=-1)
            d.setflags(write=False)
            self._cache["dirs"] = d
        return self._cache["dirs"]

    def area_weights(self) -> np.ndarray:
        """Quadrature weights summing to 4 pi."""
        if "weights" not in self._cache:
            w = self.sin_theta * self.h_theta * self.h_phi
            w = w * (4 * np.pi / w.sum())
            w.setflags(write=False)
            self._cache["weights"] = w
        return self._cache["weights"]

    def reflect(self, values: np.ndarray) -> np.ndarray:
        """Values on the grid mirrored by theta -> pi - theta."""
        return np.asarray(values)[::-1, ...]

    def sample(self, func) -> np.ndarray:
        """Evaluate ``func(theta, phi)`` at the nodes."""
        th, ph = self.mesh()
        return np.asarray(func(th, ph), dtype=float) * np.ones(self.shape)


@dataclass(frozen=True)
class RadialGraph:
    """Surface ``r = u(theta, phi)`` around the origin of the ambient space."""

    ambient: Ambient
    grid: SphereGrid
    u: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        u = np.array(self.u, dtype=float).reshape(self.grid.shape)
        u.setflags(write=False)
        object.__setattr__(self, "u", u)

    def validate(self) -> None:
        if not np.all(np.isfinite(self.u)):
            raise GeometryError("graph contains non-finite radii")
        if np.any(self.u <= 0):
            raise GeometryError(f"graph radius must be positive (min u = {self.u.min():.6g})")
        if np.any(self.u >= self.ambient.max_radius()):
            raise GeometryError("graph leaves the open hemisphere (u >= pi/2)")

    def with_u(self, u: np.ndarray, t: float) -> "RadialGraph":
        return RadialGraph(self.ambient, self.grid, u, t)

    @classmethod
    def sphere(cls, ambient: Ambient, grid: SphereGrid, radius: float, t: float = 0.0) -> "RadialGraph":
        return cls(ambient, grid, np.full(grid.shape, float(radius)), t)

    @classmethod
    def legendre(cls, ambient: Ambient, grid: SphereGrid, radius: float,
                 amplitudes: dict[int, float], t: float = 0.0) -> "RadialGraph":
        """Geodesic sphere plus axisymmetric Legendre modes ``sum a_l P_l(cos theta)``."""
        th, _ = grid.mesh()
        u = np.full(grid.shape, float(radius))
        x = np.cos(th)
        for ell, a in amplitudes.items():
            coef = np.zeros(int(ell) + 1)
            coef[int(ell)] = 1.0
            u = u + float(a) * np.polynomial.legendre.legval(x, coef)
        return cls(ambient, grid, u, t)


@dataclass(frozen=True)
class _Derivatives:
    u_t: np.ndarray  # u_theta
    u_p: np.ndarray  # u_phi
    u_tt: np.ndarray
    u_tp: np.ndarray
    u_pp: np.ndarray


def _pad_theta(u: np.ndarray) -> np.ndarray:
    # the ghost node across a pole is the first row seen from the antipodal meridian
    half = u.shape[1] // 2
    if half == 0:
        return np.concatenate([u[:1], u, u[-1:]], axis=0)
    top = np.roll(u[:1], -half, axis=1)
    bottom = np.roll(u[-1:], -half, axis=1)
    return np.concatenate([top, u, bottom], axis=0)


def _differences(grid: SphereGrid, u: np.ndarray) -> _Derivatives:
    ht, hp = grid.h_theta, grid.h_phi
    up = _pad_theta(u)
    n, s, c = up[2:], up[:-2], up[1:-1]
    u_t = (n - s) / (2 * ht)
    u_tt = (n - 2 * c + s) / ht**2
    if grid.n_phi == 1:
        z = np.zeros_like(u)
        return _Derivatives(u_t, z, u_tt, z, z)
    e, w = np.roll(u, -1, axis=1), np.roll(u, 1, axis=1)
    u_p = (e - w) / (2 * hp)
    u_pp = (e - 2 * u + w) / hp**2
    ne, nw = np.roll(n, -1, axis=1), np.roll(n, 1, axis=1)
    se, sw = np.roll(s, -1, axis=1), np.roll(s, 1, axis=1)
    u_tp = (ne - nw - se + sw) / (4 * ht * hp)
    return _Derivatives(u_t, u_p, u_tt, u_tp, u_pp)


@dataclass(frozen=True)
class CurvatureField:
    """Per-node curvature data of a radial graph; arrays have the grid shape."""

    v: np.ndarray
    phi_grad: np.ndarray  # (..., 2) covariant components phi_theta, phi_phi
    W: np.ndarray  # (..., 2, 2) mixed Weingarten matrix, W[..., j, i] = h_i^j
    k1: np.ndarray
    k2: np.ndarray
    nonconvex: np.ndarray = field(repr=False)
    scalar_negative: np.ndarray = field(repr=False)

    @property
    def H(self) -> np.ndarray:
        return self.k1 + self.k2

    @property
    def K(self) -> np.ndarray:
        return self.k1 * self.k2

    @property
    def kappa(self) -> tuple[np.ndarray, np.ndarray]:
        return self.k1, self.k2

    @property
    def flagged(self) -> bool:
        return bool(self.nonconvex.any() or self.scalar_negative.any())


def _graph_terms(graph: RadialGraph):
    amb, grid, u = graph.ambient, graph.grid, graph.u
    if not np.all(np.isfinite(u)):
        raise GeometryError("graph contains non-finite radii")
    d = _differences(grid, u)
    sin_t, cos_t = grid.sin_theta, grid.cos_theta
    sn, cs = amb.sn(u), amb.cs(u)
    # covariant Hessian of u for sigma = d theta^2 + sin^2 theta d phi^2
    hess_tt = d.u_tt
    hess_tp = d.u_tp - cos_t / sin_t * d.u_p
    hess_pp = d.u_pp + sin_t * cos_t * d.u_t
    phi_t, phi_p = d.u_t / sn, d.u_p / sn
    corr = cs / sn**2
    Phi = np.empty(u.shape + (2, 2))
    Phi[..., 0, 0] = hess_tt / sn - corr * d.u_t**2
    Phi[..., 0, 1] = Phi[..., 1, 0] = hess_tp / sn - corr * d.u_t * d.u_p
    Phi[..., 1, 1] = hess_pp / sn - corr * d.u_p**2
    inv_sin2 = 1.0 / sin_t**2
    up_t, up_p = phi_t, phi_p * inv_sin2  # raised index
    v2 = 1.0 + phi_t * up_t + phi_p * up_p
    if not (np.all(np.isfinite(v2)) and np.all(np.isfinite(Phi))):
        raise GeometryError("non-finite finite differences")
    v = np.sqrt(v2)
    return amb, u, sn, v, np.stack([phi_t, phi_p], axis=-1), (up_t, up_p), Phi, inv_sin2


def slope_factors(graph: RadialGraph) -> np.ndarray:
    """``v = sqrt(1 + sn(u)^-2 |Du|^2_sigma)`` at every node."""
    return _graph_terms(graph)[3]


def slope_factor(graph: RadialGraph, node) -> float:
    """Graph slope factor ``v >= 1`` at one node ``(j, k)`` (or ``j`` for axisymmetric grids)."""
    return float(slope_factors(graph)[_node(graph, node)])


def weingarten_field(graph: RadialGraph, _terms=None) -> np.ndarray:
    """Mixed Weingarten matrices at all nodes, shape ``grid.shape + (2, 2)``."""
    amb, u, sn, v, _, (up_t, up_p), Phi, inv_sin2 = _terms or _graph_terms(graph)
    if np.any(v == 0) or np.any(sn == 0):
        raise GeometryError("degenerate graph: v or sn(u) vanishes")
    v2 = v * v
    p00 = 1.0 - up_t * up_t / v2
    p01 = -up_t * up_p / v2
    p11 = inv_sin2 - up_p * up_p / v2
    f00, f01, f11 = Phi[..., 0, 0], Phi[..., 0, 1], Phi[..., 1, 1]
    scale = -1.0 / (v * sn)
    diag = amb.ct(u) / v
    W = np.empty(u.shape + (2, 2))
    # W = -P Phi / (v sn) + ct/v I, written out for 2x2 blocks
    W[..., 0, 0] = scale * (p00 * f00 + p01 * f01) + diag
    W[..., 0, 1] = scale * (p00 * f01 + p01 * f11)
    W[..., 1, 0] = scale * (p01 * f00 + p11 * f01)
    W[..., 1, 1] = scale * (p01 * f01 + p11 * f11) + diag
    return W


def weingarten(graph: RadialGraph, node) -> np.ndarray:
    """2x2 Weingarten matrix ``W[j, i] = h_i^j`` at one node."""
    return weingarten_field(graph)[_node(graph, node)]


def _node(graph: RadialGraph, node):
    if np.isscalar(node):
        return (int(node), 0)
    return tuple(int(i) for i in node)


def principal_curvatures(W: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form eigenvalues ``k1 >= k2`` of a field of 2x2 matrices with real spectrum."""
    tr = W[..., 0, 0] + W[..., 1, 1]
    det = W[..., 0, 0] * W[..., 1, 1] - W[..., 0, 1] * W[..., 1, 0]
    half = 0.5 * tr
    # discriminant computed from the traceless part to avoid cancellation
    a = 0.5 * (W[..., 0, 0] - W[..., 1, 1])
    disc = np.maximum(a * a + W[..., 0, 1] * W[..., 1, 0], 0.0)
    s = np.sqrt(disc)
    k1 = half + s
    # k2 from the determinant when that is better conditioned
    k2 = np.where(np.abs(k1) > 0, det / np.where(k1 == 0, 1.0, k1), half - s)
    k2 = np.where(s > 1e-3 * np.abs(half), half - s, k2)
    # underflow in the discriminant can leave the pair unordered
    return np.maximum(k1, k2), np.minimum(k1, k2)


def curvature_field(graph: RadialGraph) -> CurvatureField:
    """Assemble slope factors, Weingarten matrices and sorted principal curvatures."""
    terms = _graph_terms(graph)
    amb, u, sn, v, phi_grad, *_ = terms
    W = weingarten_field(graph, terms)
    k1, k2 = principal_curvatures(W)
    nonconvex = k2 <= 0
    scalar_negative = (k1 * k2 <= 1) if amb.c == HYPERBOLIC else np.zeros_like(nonconvex)
    return CurvatureField(v=v, phi_grad=phi_grad, W=W, k1=k1, k2=k2,
                          nonconvex=nonconvex, scalar_negative=scalar_negative)
