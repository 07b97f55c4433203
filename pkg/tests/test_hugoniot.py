import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from zndpiston import eos, hugoniot
from zndpiston.errors import ConfigurationError, ShockSolveError

# 40-digit reference (mpmath root of the raw jump relations) for
# gamma = 1.4, nu0 = 1.8, p0 = 1, u_iota = 1.2
REF_NU = 0.9173576929969203248714104427957977546032
REF_S = 0.8580593915157141228547218804874218995009
REF_P = 2.631464964430914841617575968930753379485
REF_SIGMA = 1.359554137025762368014646640775627816237
REF_H10 = -0.003637823999473571022668695725445649916377
REF_H20 = 0.03225551681648866837143588399233563675993
REF_G_005 = (-0.0001802282308843463822160489253210224265258, 0.001612171585027860211271072291211687160973)


def test_background_matches_reference(up, bg):
    assert bg.u == 1.2
    assert bg.nu == pytest.approx(REF_NU, rel=1e-13)
    assert bg.s == pytest.approx(REF_S, rel=1e-13)
    assert bg.p == pytest.approx(REF_P, rel=1e-13)
    assert bg.sigma == pytest.approx(REF_SIGMA, rel=1e-13)


def test_boundary_maps_match_reference(up, bg):
    maps = hugoniot.boundary_maps(up, bg)
    assert maps.h10 == pytest.approx(REF_H10, rel=1e-9)
    assert maps.h20 == pytest.approx(REF_H20, rel=1e-9)
    assert maps.det_k > 0
    assert abs(maps.h10) < 1


def test_g_maps_match_reference(up, bg):
    assert hugoniot.g_maps(up, bg, 0.05) == pytest.approx(REF_G_005, abs=1e-14)


def test_g_maps_zero_at_background(up, bg):
    assert hugoniot.g_maps(up, bg, 0.0) == (0.0, 0.0)


def test_g_maps_radius(up, bg):
    with pytest.raises(ShockSolveError):
        hugoniot.g_maps(up, bg, 0.2)


def test_shock_boundary_slopes_match_maps(up, bg):
    sb = hugoniot.ShockBoundary(up, bg)
    maps = hugoniot.boundary_maps(up, bg)
    assert sb.slopes(0.0, 0.0, 0.0) == pytest.approx((maps.h10, maps.h20), rel=1e-12)


def test_rh_residuals_vanish_on_locus(up):
    for nu in np.linspace(0.5, 0.99, 7):
        pt = hugoniot.downstream_closed_form(up, nu)
        j1, j2 = hugoniot.rh_residuals(up, pt.nu, pt.s, pt.u)
        assert abs(j1) < 1e-13 and abs(j2) < 1e-13


upstreams = st.tuples(st.floats(1.1, 2.5), st.floats(1.01, 2.5), st.floats(0.2, 5.0))


@settings(max_examples=50, deadline=None)
@given(upstreams, st.floats(0.05, 0.98))
def test_newton_matches_closed_form(params, frac):
    g, m, p0 = params
    up = hugoniot.UpstreamState(g, (g + 1) / g * m, p0)
    nu = up.nu0 * frac
    try:
        ref = hugoniot.downstream_closed_form(up, nu)
    except ValueError:
        assume(False)
    new = hugoniot.solve_downstream(up, nu)
    assert new.s == pytest.approx(ref.s, abs=1e-10)
    assert new.u == pytest.approx(ref.u, rel=1e-10, abs=1e-10)
    assert new.p == pytest.approx(ref.p, rel=1e-10)


def test_u_decreasing_along_locus(up):
    lo = hugoniot.locus_lower_limit(up)
    nus = np.linspace(lo, up.nu0, 300)[1:-1]
    u = [hugoniot.downstream_closed_form(up, float(nu)).u for nu in nus]
    assert np.all(np.diff(u) < 0)


def test_temperature_rises_across_shock(up):
    params = eos.EosParams(up.gamma)
    T0 = eos.temperature(params, eos.ThermoPoint(up.nu0, up.s0))
    for nu in (0.6, 0.9, 1.2):
        pt = hugoniot.downstream_closed_form(up, nu)
        assert eos.temperature(params, eos.ThermoPoint(pt.nu, pt.s)) > T0


def test_weak_shock_limit_is_sonic(up):
    pt = hugoniot.downstream_closed_form(up, up.nu0 * (1 - 1e-7))
    assert pt.sigma == pytest.approx(up.c0, rel=1e-5)


def test_admissible_window(up):
    u1, uo = hugoniot.admissible_window(up)
    assert u1 == pytest.approx(hugoniot.downstream_closed_form(up, 1.0).u, rel=1e-12)
    assert u1 < 1.2 < uo
    assert hugoniot.solve_from_piston_speed(up, 0.5 * (u1 + uo)).nu < 1


def test_window_unbounded_for_large_upstream_volume():
    up = hugoniot.UpstreamState(1.4, 3.6, 1.0)
    assert math.isinf(hugoniot.admissible_window(up)[1])


def test_solve_from_piston_speed_rejects_outside_window(up):
    with pytest.raises(ValueError):
        hugoniot.solve_from_piston_speed(up, 0.5)


def test_upstream_hypothesis():
    with pytest.raises(ConfigurationError, match="nu0"):
        hugoniot.UpstreamState(1.4, 1.5, 1.0)


def test_lax_and_sound_speed(up, bg):
    assert hugoniot.lax_check(up, bg)
    assert up.c0 < bg.sigma < hugoniot.downstream_sound_speed(up, bg)


def test_speed_ordering_fails_near_strong_end(up):
    # sigma > u_iota requires nu_iota > nu0 - 1; false near the top of the window
    u1, uo = hugoniot.admissible_window(up)
    pt = hugoniot.solve_from_piston_speed(up, u1 + 0.95 * (uo - u1))
    assert pt.nu < up.nu0 - 1
    assert not hugoniot.speed_ordering(up, pt)
    assert pt.sigma * up.nu0 > pt.u  # Eulerian shock still outruns the piston
