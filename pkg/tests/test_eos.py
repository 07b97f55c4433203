import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zndpiston import eos
from zndpiston.errors import ConfigurationError, DomainError

gammas = st.floats(1.05, 3.0)
entropies = st.floats(-2.0, 2.0)


@pytest.mark.parametrize("gamma", [1.2, 1.4, 2.0])
@pytest.mark.parametrize("s", [-1.0, 0.0, 1.0])
def test_branches_meet_at_unit_volume(gamma, s):
    params = eos.EosParams(gamma)
    for f in (eos.internal_energy, eos.pressure, eos.dp_dnu):
        below = f(params, eos.ThermoPoint(1.0 - 1e-12, s))
        above = f(params, eos.ThermoPoint(1.0 + 1e-12, s))
        assert below == pytest.approx(above, abs=1e-10)


def test_upper_branch_is_polytropic():
    params = eos.EosParams(1.4)
    pt = eos.ThermoPoint(2.0, 0.3)
    es = math.exp(0.3)
    assert eos.pressure(params, pt) == pytest.approx(es * 2.0**-1.4, rel=1e-15)
    assert eos.internal_energy(params, pt) == pytest.approx(es * 2.0**-0.4 / 0.4, rel=1e-15)


def test_lower_branch_pressure_linear_in_volume():
    params = eos.EosParams(1.4)
    nu = np.linspace(0.1, 0.9, 9)
    p = eos.pressure(params, eos.ThermoPoint(nu, 0.0))
    assert np.allclose(np.diff(p, 2), 0.0, atol=1e-14)
    assert np.allclose(eos.dp_dnu(params, eos.ThermoPoint(nu, 0.0)), -1.4)


def test_temperature_equals_internal_energy():
    params = eos.EosParams(1.7)
    pt = eos.ThermoPoint(np.array([0.3, 1.0, 2.5]), np.array([0.1, -0.2, 0.4]))
    assert np.array_equal(eos.temperature(params, pt), eos.internal_energy(params, pt))


@settings(max_examples=60, deadline=None)
@given(gammas, st.floats(0.05, 4.0), entropies, st.floats(-1, 1), st.floats(-1, 1))
def test_gibbs_relation(gamma, nu, s, dnu, ds):
    params = eos.EosParams(gamma)
    h = 1e-6
    de = eos.internal_energy(params, eos.ThermoPoint(nu + h * dnu, s + h * ds)) - eos.internal_energy(
        params, eos.ThermoPoint(nu - h * dnu, s - h * ds)
    )
    mid = eos.ThermoPoint(nu, s)
    T, p = eos.temperature(params, mid), eos.pressure(params, mid)
    scale = abs(T * ds) + abs(p * dnu) + 1e-3
    assert abs(de - 2 * h * (T * ds - p * dnu)) <= 1e-6 * 2 * h * scale


@settings(max_examples=40, deadline=None)
@given(gammas, st.floats(0.05, 4.0), entropies)
def test_entropy_from_pressure_roundtrip(gamma, nu, s):
    params = eos.EosParams(gamma)
    p = eos.pressure(params, eos.ThermoPoint(nu, s))
    if p > 0:
        assert eos.entropy_from_pressure(params, nu, p) == pytest.approx(s, abs=1e-10)


def test_vectorised_and_scalar_agree():
    params = eos.EosParams(1.4)
    nu = np.array([0.5, 1.0, 1.5])
    vec = eos.pressure(params, eos.ThermoPoint(nu, 0.2))
    assert [eos.pressure(params, eos.ThermoPoint(float(v), 0.2)) for v in nu] == pytest.approx(vec, rel=1e-15)
    assert isinstance(eos.pressure(params, eos.ThermoPoint(0.5, 0.2)), float)


def test_invalid_inputs():
    with pytest.raises(ConfigurationError, match="gamma"):
        eos.EosParams(1.0)
    with pytest.raises(DomainError):
        eos.ThermoPoint(0.0, 0.0)
    with pytest.raises(DomainError):
        eos.ThermoPoint(np.array([0.5, -1.0]), 0.0)
