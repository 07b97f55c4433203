import math
from dataclasses import replace

import numpy as np
import pytest
from scipy.integrate import trapezoid

from zndpiston import eos
from zndpiston.errors import CFLError, ConfigurationError
from zndpiston.simulation import (
    GasState,
    PistonProfile,
    ScenarioConfig,
    init_scenario,
    reconstruct_physical,
    run,
)


def test_invalid_piston_speed_rejected_before_stepping(make_cfg):
    with pytest.raises(ConfigurationError, match="u_iota"):
        make_cfg(u_iota=5.0)


@pytest.mark.parametrize("field,value", [("epsilon", -0.01), ("kappa", 0.0), ("n_cells", 2), ("order", 3)])
def test_config_validation(make_cfg, field, value):
    with pytest.raises(ConfigurationError, match=field):
        make_cfg(**{field: value})


def test_piston_profiles_satisfy_c1_bound():
    t = np.linspace(0, 20, 2001)
    for prof in (PistonProfile("constant"), PistonProfile("ramp"), PistonProfile("raised_cosine"),
                 PistonProfile("kinked_ramp", tau=2.0)):
        assert prof.g(0.0) == 0.0
        assert max(abs(prof.g(x)) for x in t) <= 1.0
        assert max(abs(prof.dg(x)) for x in t) <= 1.0 + 1e-12


def test_initial_shock_speed(make_cfg):
    sim = init_scenario(make_cfg(epsilon=0.0, T_i=100.0))
    assert sim.history.chi_prime[0] == sim.chi0
    assert sim.chi_prime == sim.chi0
    assert np.all(sim.phi == 0.0)


def test_background_step_is_exact(make_cfg):
    sim = init_scenario(make_cfg(epsilon=0.0, T_i=100.0))
    sim.step()
    assert np.max(np.abs(sim.phi_hat)) <= 1e-13
    assert sim.chi_prime == sim.chi0


def test_background_run_stays_zero(make_cfg):
    ts = run(make_cfg(epsilon=0.0, T_i=100.0, n_cells=50, t_end=3.0))
    for key in ("norm_c0", "norm_c1", "chi_dev"):
        assert np.max(ts.trace[key]) < 1e-10
    assert ts.snapshots[-1].t == pytest.approx(3.0, rel=1e-14)


def test_inert_background_with_hot_gas(make_cfg):
    # hbar = 0 keeps the background exact even when the gas is above ignition
    ts = run(make_cfg(epsilon=0.0, hbar=0.0, n_cells=40, t_end=1.0))
    assert np.max(ts.trace["norm_c0"]) < 1e-10


def test_boundary_relations_hold(make_cfg):
    ts = run(make_cfg(epsilon=1e-3, n_cells=60, t_end=1.5))
    cfg, bg = ts.cfg, ts.background
    for snap in ts.snapshots[1:]:
        a = bg.scaling.alpha
        p1, p3 = a * snap.phi_hat[0, 0], snap.phi_hat[2, 0]
        assert p3 == pytest.approx(p1 + 2 * (cfg.piston_velocity(snap.t) - cfg.u_iota), abs=1e-15)
        st = snap.state
        assert st.u[0] == pytest.approx(cfg.piston_velocity(snap.t), abs=1e-14)
        assert snap.Z[-1] == 1.0
        assert np.all((st.nu > 0) & (st.nu < 1))


def test_shock_node_satisfies_jump_relations(make_cfg):
    from zndpiston import hugoniot

    ts = run(make_cfg(epsilon=1e-3, n_cells=60, t_end=1.0))
    up = ts.background.upstream
    for snap in ts.snapshots:
        st = snap.state
        j1, j2 = hugoniot.rh_residuals(up, st.nu[-1], st.s[-1], st.u[-1])
        assert max(abs(j1), abs(j2)) < 1e-11
        sigma = math.sqrt(-(st.p[-1] - up.p0) / (st.nu[-1] - up.nu0))
        assert snap.chi_prime == pytest.approx(sigma, rel=1e-12)


def test_perturbation_is_order_epsilon(make_cfg):
    # regression: sup |phi_hat| / epsilon for the ramp piston (n = 100, t_end = 2)
    a = run(make_cfg(epsilon=1e-3, n_cells=100, t_end=2.0))
    b = run(make_cfg(epsilon=1e-3, n_cells=200, t_end=2.0))
    ra, rb = (np.max(s.trace["norm_c0"]) / 1e-3 for s in (a, b))
    assert ra == pytest.approx(rb, rel=1e-2)
    assert 0.5 < ra < 5.0


def test_cfl_violation_halts_with_snapshot(make_cfg):
    with pytest.raises(CFLError) as info:
        run(make_cfg(epsilon=1e-3, cfl=10.0, n_cells=20, t_end=0.5))
    assert info.value.snapshot is not None


def test_dt_floor(make_cfg):
    with pytest.raises(CFLError):
        run(make_cfg(epsilon=1e-3, n_cells=20, t_end=0.5, dt_min=1.0))


def test_second_order_option(make_cfg):
    ts = run(make_cfg(epsilon=1e-3, n_cells=60, t_end=1.0, order=2))
    ref = run(make_cfg(epsilon=1e-3, n_cells=240, t_end=1.0, order=1))
    first = run(make_cfg(epsilon=1e-3, n_cells=60, t_end=1.0, order=1))
    dev = lambda s: abs(s.trace["chi_dev"][-1] - ref.trace["chi_dev"][-1])
    assert dev(ts) < dev(first)


def test_reconstruct_background(make_cfg):
    sim = init_scenario(make_cfg(epsilon=0.0, T_i=100.0))
    ref, sc = sim.background.ref, sim.background.scaling
    st = reconstruct_physical(ref, sc, np.zeros((3, 2)))
    pt = sim.background.point
    assert st.nu == pytest.approx([pt.nu] * 2, abs=1e-15)
    assert st.p == pytest.approx([pt.p] * 2, rel=1e-14)
    e = eos.internal_energy(eos.EosParams(1.4), eos.ThermoPoint(pt.nu, pt.s))
    assert st.total_energy(1.0, 0.25)[0] == pytest.approx(0.5 * pt.u**2 + e + 0.25, rel=1e-14)


def test_reconstruct_rejects_escape(make_cfg):
    from zndpiston.errors import StateEscapeError

    sim = init_scenario(make_cfg(epsilon=0.0, T_i=100.0))
    phi_hat = np.zeros((3, 1))
    phi_hat[0] = -1.0  # raises nu by lambda_b-scaled amount
    with pytest.raises(StateEscapeError):
        reconstruct_physical(sim.background.ref, sim.background.scaling, -10 * phi_hat)


def test_z_probes_match_closed_form(make_cfg):
    from zndpiston.simulation import z_field

    ts = run(make_cfg(epsilon=1e-3, n_cells=100, t_end=2.0))
    pr = ts.probes
    assert pr["x"].size > 0
    closed = z_field(ts.history, 1.0, ts.history.t[-1], pr["x"])
    assert np.max(np.abs(closed - pr["z_ode"])) < 1e-6


def _balance(series, xa=0.2, xb=0.8, ta=1.0, tb=2.0):
    """|weak-form residual| of mass, momentum and energy on [xa, xb] x [ta, tb]."""
    snaps = [s for s in series.snapshots if ta - 1e-12 <= s.t <= tb + 1e-12]
    hbar = series.cfg.hbar
    xs = np.linspace(xa, xb, 2001)

    def fields(s, x):
        st = s.state
        nu, u, p, T, Z = (np.interp(x, s.x, f) for f in (st.nu, st.u, st.p, st.T, s.Z))
        return nu, u, p, 0.5 * u * u + T + hbar * Z

    def density(s):
        nu, u, _, E = fields(s, xs)
        return np.array([trapezoid(nu, xs), trapezoid(u, xs), trapezoid(E, xs)])

    def flux(s, x):
        _, u, p, _ = fields(s, np.array([x]))
        return np.array([-u[0], p[0], p[0] * u[0]])

    t = np.array([s.t for s in snaps])
    F = np.array([flux(s, xb) - flux(s, xa) for s in snaps])
    return np.abs(density(snaps[-1]) - density(snaps[0]) + trapezoid(F, t, axis=0))


@pytest.mark.slow
def test_weak_form_conservation_converges(make_cfg):
    res = [_balance(run(make_cfg(epsilon=1e-2, n_cells=n, t_end=2.0, snapshot_dt=0.005))) for n in (100, 200)]
    assert np.all(res[0] / res[1] >= 1.5)
