import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curvflow.geometry import Ambient, RadialGraph, SphereGrid
from curvflow.monitors import (G_RANGES, PINCH_RANGES, MonitorRecord, bound_blowup_time, bound_H_lower_sphere,
                               bound_K_lower_sphere, bound_scalar_lower, curvature_bounds, pinch_decay_check,
                               pinching_G, radius_ratio, record_checks)
from curvflow.speeds import SpeedKind, SpeedSpec, speed_value

H3, R3, S3 = Ambient(-1), Ambient(0), Ambient(1)
cone = st.tuples(st.floats(1.2, 5.0), st.floats(1.1, 4.0)).map(lambda p: (max(p), min(p)))


@given(cone, st.sampled_from([Fraction(1, 3), Fraction(1, 2), Fraction(2)]))
def test_pinching_quantity_closed_forms(k, a):
    k1, k2 = k
    af = float(a)
    H, K = k1 + k2, k1 * k2
    forms = {
        ("mean_power", H3): H ** (2 * af) * (k1 - k2) ** 2 / (K - 1) ** 2,
        ("scalar_power", H3): (K - 1) ** (2 * af - 2) * (k1 - k2) ** 2,
        ("gauss_power", H3): K ** (2 * af) * (k1 - k2) ** 2 / (K - 1) ** 2,
        ("mean_power", S3): (k1 - k2) ** 2 * H ** (2 * af) / K**2,
        ("gauss_power", S3): (k1 - k2) ** 2 / K ** (2 - 2 * af),
    }
    for (kind, amb), expected in forms.items():
        spec = SpeedSpec(kind, a, amb)
        G = pinching_G(spec, (k1, k2), speed_value(spec, k1, k2))
        assert G == pytest.approx(expected, rel=1e-12, abs=1e-300)


def test_pinching_quantity_vanishes_on_umbilics_and_rejects_cone_exit():
    spec = SpeedSpec("mean_power", 2, H3)
    assert pinching_G(spec, (2.0, 2.0), 16.0) == 0.0
    with pytest.raises(ValueError):
        pinching_G(spec, (2.0, 0.4), 1.0)
    with pytest.raises(ValueError):
        pinching_G(SpeedSpec("mean_power", 1, S3), (2.0, -0.1), 1.0)


def test_lower_bounds_at_time_zero_and_blowup():
    assert bound_scalar_lower("mean_power", 2, 0.0, 1.5) == pytest.approx(0.5)
    assert bound_H_lower_sphere(2, 0.0, 3.0) == pytest.approx(3.0)
    assert bound_K_lower_sphere(Fraction(1, 2), 0.0, 2.0) == pytest.approx(2.0)
    spec = SpeedSpec("mean_power", 2, H3)
    T = bound_blowup_time(spec, 1.5, 3.0)
    # 2^a (a + 1) m^((a+1)/2) is the rate
    assert T == pytest.approx(1 / (4 * 3 * 0.5**1.5))
    assert math.isinf(curvature_bounds(spec, 1.01 * T, 1.5, 3.0)[0])
    with pytest.raises(ValueError):
        bound_scalar_lower("mean_power", 2, 0.0, 0.9)


@settings(max_examples=30)
@given(st.sampled_from([("mean_power", H3), ("gauss_power", H3), ("scalar_power", H3),
                        ("mean_power", S3), ("gauss_power", S3)]),
       st.sampled_from([Fraction(1, 2), Fraction(1)]), st.floats(0.0, 0.99))
def test_bounds_increase_towards_blowup(case, a, frac):
    kind, amb = case
    spec = SpeedSpec(kind, a, amb)
    K0, H0 = 2.0, 3.0
    T = bound_blowup_time(spec, K0, H0)
    b0 = curvature_bounds(spec, 0.0, K0, H0)
    b1 = curvature_bounds(spec, frac * T, K0, H0)
    for x0, x1 in zip(b0, b1):
        if not math.isnan(x0):
            assert x1 >= x0 - 1e-12


def test_sphere_bound_choices():
    bK, bH = curvature_bounds(SpeedSpec("mean_power", 1, S3), 0.01, 2.0, 3.0)
    assert bK == 2.0 and bH > 3.0
    bK, bH = curvature_bounds(SpeedSpec("gauss_power", 1, S3), 0.01, 2.0, 3.0)
    assert bK > 2.0 and math.isnan(bH)
    assert all(math.isnan(b) for b in curvature_bounds(SpeedSpec("mean_power", 1, R3), 0.01, 2.0, 3.0))


def test_ranges_cover_the_theorem_cases():
    assert set(G_RANGES) == set(PINCH_RANGES)
    for key, (lo, hi) in PINCH_RANGES.items():
        glo, ghi = G_RANGES[key]
        assert glo <= lo <= hi <= ghi


@pytest.mark.parametrize("amb", [H3, R3, S3], ids=lambda a: a.name)
@pytest.mark.parametrize("mode,n_phi", [("axisymmetric", 1), ("full", 16)])
def test_radius_ratio(amb, mode, n_phi):
    grid = SphereGrid(mode, 16, n_phi)
    assert radius_ratio(RadialGraph.sphere(amb, grid, 0.7)) == pytest.approx(1.0, abs=1e-12)
    assert radius_ratio(RadialGraph.legendre(amb, grid, 0.7, {2: 0.05})) > 1.05


def _rec(tau, ratio, **kw):
    base = dict(t=0.0, tau=tau, dt=0.0, u_min=1.0, u_max=1.0, k1_max=2.0, k2_min=2.0, H_min=4.0, K_min=4.0,
                G_max=1.0, pinch_ratio=ratio, radius_ratio=1.0, u_tilde_dev=0.0, bound_K=math.nan,
                bound_H=math.nan, theta=1.0)
    base.update(kw)
    return MonitorRecord(**base)


@given(st.floats(-4.0, -0.1), st.floats(-3.0, 0.0))
def test_pinch_decay_fit_recovers_slope(slope, b):
    recs = [_rec(tau, 1 + math.exp(b + slope * tau)) for tau in np.linspace(0, 3, 20)]
    fit = pinch_decay_check(recs)
    assert fit.slope == pytest.approx(slope, rel=1e-9, abs=1e-9)
    assert fit.n_points == 20 and not fit.trivially_pinched


def test_pinch_decay_trivial_and_tau_min():
    assert pinch_decay_check([_rec(0.0, 1.0), _rec(1.0, 1.0)]).trivially_pinched
    recs = [_rec(tau, 1 + math.exp(-tau)) for tau in range(10)]
    assert pinch_decay_check(recs, tau_min=5).n_points == 5


def test_record_checks():
    spec = SpeedSpec("mean_power", 2, H3)
    first = _rec(0.0, 1.1, G_max=1.0, bound_K=3.0)
    assert record_checks(spec, first, None, None) == {"cone": True, "bound_K": True}
    ok = record_checks(spec, _rec(0.1, 1.1, G_max=1.0 + 1e-7, bound_K=3.0), first, first)
    assert ok["G_monotone"]
    bad = record_checks(spec, _rec(0.1, 1.1, G_max=1.01, K_min=2.0, bound_K=3.0), first, first)
    assert not bad["G_monotone"] and not bad["bound_K"]
    # outside the range the monotonicity check is not made
    out = record_checks(SpeedSpec("mean_power", 6, H3), _rec(0.1, 1.1, G_max=2.0), first, first)
    assert "G_monotone" not in out
    assert not record_checks(spec, _rec(0.1, 1.1, K_min=0.9), first, first)["cone"]
    assert record_checks(SpeedSpec("gauss_power", 1, S3), _rec(0.0, 1.0, k2_min=0.5), None, None)["cone"]
