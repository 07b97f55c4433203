import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zndpiston.errors import DomainError
from zndpiston.simulation import ShockHistory, z_field


def linear_history(chi0=1.3, t_end=5.0, n=257):
    t = np.linspace(0.0, t_end, n)
    return ShockHistory.from_arrays(t, chi0 * t, np.full_like(t, chi0))


def test_z_is_one_at_front():
    h = linear_history()
    assert z_field(h, 0.8, 2.0, h.position(2.0)) == 1.0


def test_z_without_reaction_rate():
    h = linear_history()
    x = np.linspace(0, 1.3, 11)
    assert np.all(z_field(h, 0.0, 1.0, x) == 1.0)


@pytest.mark.parametrize("method", ["pchip", "linear"])
def test_z_constant_speed_closed_form(method):
    h = linear_history()
    for t in (0.3, 2.0, 4.9):
        x = np.linspace(0, 1.3 * t, 51)
        exact = np.exp(-0.7 * (t - x / 1.3))
        assert np.max(np.abs(z_field(h, 0.7, t, x, method=method) - exact)) < 1e-12


def test_z_outside_domain():
    h = linear_history()
    with pytest.raises(DomainError):
        z_field(h, 1.0, 1.0, 1.5)
    with pytest.raises(DomainError):
        z_field(h, 1.0, 1.0, -0.1)


def test_history_must_increase():
    h = ShockHistory()
    h.append(0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        h.append(0.0, 0.1, 1.0)
    with pytest.raises(ValueError):
        h.append(0.1, 0.1, 0.0)


def test_history_grows_past_capacity():
    h = ShockHistory(capacity=2)
    for k in range(10):
        h.append(float(k), 2.0 * k, 2.0)
    assert len(h) == 10 and h.chi[-1] == 18.0


@settings(max_examples=30, deadline=None)
@given(st.floats(0.0, 0.3), st.floats(0.5, 3.0))
def test_inverse_of_curved_history(amp, rate):
    # chi(t) = t + amp sin(rate t) / rate, strictly increasing for amp < 1
    t = np.linspace(0.0, 4.0, 801)
    chi = t + amp * np.sin(rate * t) / rate
    chip = 1.0 + amp * np.cos(rate * t)
    h = ShockHistory.from_arrays(t, chi, chip)
    tq = np.linspace(0.01, 3.99, 97)
    xq = tq + amp * np.sin(rate * tq) / rate
    assert np.max(np.abs(h.inverse(xq) - tq)) < 1e-6
    assert np.max(np.abs(h.position(tq) - xq)) < 1e-6
    assert np.all(np.diff(h.inverse(np.linspace(0, chi[-1], 1000))) >= 0)
