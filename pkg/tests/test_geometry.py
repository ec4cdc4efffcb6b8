import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvflow.geometry import (Ambient, GeometryError, RadialGraph, SphereGrid, curvature_field,
                               principal_curvatures, slope_factor, weingarten, weingarten_field)
from oracles import embedded_shape_operator

AMBIENTS = [Ambient(-1), Ambient(0), Ambient(1)]


@given(st.sampled_from([-1, 0, 1]), st.floats(0.01, 1.5))
def test_space_form_identities(c, r):
    amb = Ambient(c)
    assert amb.cs(r) ** 2 + c * amb.sn(r) ** 2 == pytest.approx(1.0, rel=1e-12)
    assert amb.ct(r) == pytest.approx(amb.cs(r) / amb.sn(r), rel=1e-12)


def test_ambient_names_and_limits():
    assert Ambient.from_name("hyperbolic").c == -1
    assert Ambient.from_name("spherical").max_radius() == pytest.approx(math.pi / 2)
    assert math.isinf(Ambient(-1).max_radius())
    with pytest.raises(ValueError):
        Ambient(2)
    with pytest.raises(ValueError):
        Ambient.from_name("elliptic")


def test_ct_does_not_overflow_for_large_radii():
    assert Ambient(-1).ct(800.0) == pytest.approx(1.0)


def test_grid_is_staggered_and_weights_integrate_the_sphere():
    g = SphereGrid("full", 16, 32)
    assert g.theta[0] == pytest.approx(math.pi / 32)
    assert g.theta[-1] == pytest.approx(math.pi - math.pi / 32)
    assert g.area_weights().sum() == pytest.approx(4 * math.pi)
    d = g.directions()
    assert np.allclose(np.linalg.norm(d, axis=-1), 1.0)
    assert np.allclose(g.reflect(g.sample(lambda th, ph: np.cos(th))), -g.sample(lambda th, ph: np.cos(th)))


def test_grid_rejects_bad_shapes():
    with pytest.raises(ValueError):
        SphereGrid("axisymmetric", 16, 4)
    with pytest.raises(ValueError):
        SphereGrid("full", 16, 7)


@pytest.mark.parametrize("amb", AMBIENTS, ids=lambda a: a.name)
@pytest.mark.parametrize("mode,n_phi", [("axisymmetric", 1), ("full", 16)])
def test_geodesic_sphere_is_umbilic(amb, mode, n_phi):
    grid = SphereGrid(mode, 16, n_phi)
    R = 0.7
    cf = curvature_field(RadialGraph.sphere(amb, grid, R))
    assert np.allclose(cf.v, 1.0, atol=1e-14)
    assert np.allclose(cf.k1, amb.ct(R), rtol=1e-12)
    assert np.allclose(cf.k2, amb.ct(R), rtol=1e-12)
    assert not cf.flagged


def test_validation_errors():
    grid = SphereGrid("axisymmetric", 16)
    with pytest.raises(GeometryError):
        RadialGraph.sphere(Ambient(1), grid, 1.6).validate()
    with pytest.raises(GeometryError):
        RadialGraph(Ambient(-1), grid, -np.ones(grid.shape)).validate()
    with pytest.raises(GeometryError):
        RadialGraph(Ambient(0), grid, np.full(grid.shape, np.nan)).validate()


@given(st.lists(st.floats(-5, 5), min_size=4, max_size=4))
def test_closed_form_eigenvalues(entries):
    A = np.array(entries).reshape(2, 2)
    S = np.array([[2.0, 0.3], [0.3, 1.0]])
    W = S @ (A + A.T)  # product of SPD and symmetric: real spectrum
    k1, k2 = principal_curvatures(W)
    ev = np.sort(np.linalg.eigvals(W).real)
    scale = max(1.0, np.abs(ev).max())
    assert k1 >= k2
    assert abs(k1 - ev[1]) <= 1e-9 * scale
    assert abs(k2 - ev[0]) <= 1e-9 * scale


def _axisym_surface(R, eps):
    return lambda th, ph: R + eps * (1.5 * np.cos(th) ** 2 - 0.5) + 0.5 * eps * np.cos(th) ** 3


def _full_surface(R, eps):
    return lambda th, ph: R + eps * np.sin(th) ** 2 * np.cos(2 * ph) + eps * np.cos(th) * np.sin(th) * np.sin(ph)


def _max_error(amb, grid, func, rows=slice(None)):
    graph = RadialGraph(amb, grid, grid.sample(func))
    W = weingarten_field(graph)
    err = 0.0
    cols = range(0, grid.n_phi, max(1, grid.n_phi // 8))
    for i in range(grid.n_theta)[rows]:
        for j in cols:
            Wo, _ = embedded_shape_operator(amb.c, func, grid.theta[i], grid.phi[j])
            err = max(err, np.abs(W[i, j] - Wo).max())
    return err


@pytest.mark.parametrize("amb", AMBIENTS, ids=lambda a: a.name)
def test_weingarten_second_order_axisymmetric(amb):
    f = _axisym_surface(0.8, 0.08)
    errs = [_max_error(amb, SphereGrid("axisymmetric", n), f) for n in (16, 32, 64)]
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1.9, (errs, orders)


def test_weingarten_second_order_away_from_poles_full_mode():
    amb = Ambient(-1)
    f = _full_surface(0.8, 0.05)
    errs = []
    for n in (32, 64, 128):
        grid = SphereGrid("full", n, 2 * n)
        # rows with theta in [pi/4, 3pi/4]
        errs.append(_max_error(amb, grid, f, slice(n // 4, 3 * n // 4)))
    orders = [math.log2(errs[i] / errs[i + 1]) for i in range(2)]
    assert min(orders) >= 1.9, (errs, orders)


def test_full_mode_converges_at_the_poles():
    amb = Ambient(1)
    f = _full_surface(0.8, 0.05)
    errs = [_max_error(amb, SphereGrid("full", n, 2 * n), f, slice(0, 1)) for n in (16, 32, 64)]
    assert errs[0] > errs[1] > errs[2]


def test_slope_factor_matches_oracle():
    amb = Ambient(-1)
    f = _full_surface(0.6, 0.05)
    grid = SphereGrid("full", 32, 64)
    graph = RadialGraph(amb, grid, grid.sample(f))
    _, v = embedded_shape_operator(-1, f, grid.theta[10], grid.phi[5])
    assert slope_factor(graph, (10, 5)) == pytest.approx(v, rel=1e-3)
    assert np.allclose(weingarten(graph, (10, 5)), weingarten_field(graph)[10, 5])


@settings(max_examples=20, deadline=None)
@given(st.floats(0.2, 1.2), st.floats(-0.05, 0.05), st.floats(-0.03, 0.03))
def test_mirror_symmetry(R, a2, a3):
    amb = Ambient(-1)
    grid = SphereGrid("axisymmetric", 24)
    g = RadialGraph.legendre(amb, grid, R, {2: a2, 3: a3})
    mirrored = RadialGraph(amb, grid, grid.reflect(g.u))
    cf, cm = curvature_field(g), curvature_field(mirrored)
    assert np.allclose(cm.k1, grid.reflect(cf.k1), rtol=1e-12, atol=1e-12)
    assert np.allclose(cm.k2, grid.reflect(cf.k2), rtol=1e-12, atol=1e-12)


def test_axisymmetric_agrees_with_full_mode_on_axisymmetric_data():
    amb = Ambient(1)
    f = _axisym_surface(0.7, 0.05)
    ca = curvature_field(RadialGraph(amb, SphereGrid("axisymmetric", 24), SphereGrid("axisymmetric", 24).sample(f)))
    gf = SphereGrid("full", 24, 8)
    cfull = curvature_field(RadialGraph(amb, gf, gf.sample(f)))
    assert np.allclose(cfull.k1, ca.k1, rtol=1e-10)
    assert np.allclose(cfull.k2, ca.k2, rtol=1e-10)


def test_flags_nonconvex_points():
    amb = Ambient(0)
    grid = SphereGrid("axisymmetric", 32)
    cf = curvature_field(RadialGraph.legendre(amb, grid, 1.0, {2: 0.6}))
    assert cf.nonconvex.any()
    assert cf.flagged
