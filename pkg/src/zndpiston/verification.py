"""
Executable checks of the structural identities and the qualitative
conclusions of the existence theory.

Library checks (EOS, jump relations, boundary maps, eigenvectors) sample
deterministic grids or a fixed-seed generator.  Series checks read a
``TimeSeries`` and never modify it.  Every check returns a ``ReportEntry``;
``run_suite`` assembles the twelve acceptance checks into one report.

A numerical run cannot test uniqueness; the report says so in its preamble.
"""

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from . import eos, hugoniot, riemann
from .errors import AdmissibilityError, ConfigurationError, InvariantViolation, NumericalError
from .simulation import ShockHistory, reconstruct_physical, run, z_field

PREAMBLE = (
    "Numerical surrogate checks of the existence theory. Uniqueness cannot be "
    "tested by a finite run and is not checked. Global boundedness is "
    "operationalised as no secular growth of the C0 norm up to t = 100."
)
RNG_SEED = 20240611


@dataclass(frozen=True)
class Thresholds:
    eos_continuity: float = 1e-10
    thermo_relation: float = 1e-6
    jump_oracle: float = 1e-10
    g_slope: float = 1e-6
    eigen_residual: float = 1e-10
    background: float = 1e-10
    z_consistency: float = 1e-6
    z_closed_form: float = 1e-12
    ratio_band: tuple = (1.8, 2.2)
    spread: float = 0.25
    shock_residual: float = 1e-8
    convergence_ratio: float = 1.5
    growth_factor: float = 10.0
    growth_reference_time: float = 10.0
    zero_derivative: float = 1e-8


@dataclass
class ReportEntry:
    name: str
    value: float
    threshold: object
    passed: bool
    runtime: float = 0.0
    detail: str = ""
    informational: bool = False


@dataclass
class VerificationReport:
    entries: list = field(default_factory=list)
    preamble: str = PREAMBLE

    def add(self, entry):
        if any(e.name == entry.name for e in self.entries):
            raise ValueError(f"duplicate check {entry.name!r}")
        self.entries.append(entry)
        return entry

    @property
    def passed(self):
        return all(e.passed for e in self.entries if not e.informational)

    def to_json(self):
        doc = {
            "preamble": self.preamble,
            "passed": self.passed,
            "checks": [
                {k: _jsonable(v) for k, v in asdict(e).items()} for e in self.entries
            ],
        }
        return json.dumps(doc, indent=2)

    def table(self):
        width = max([len(e.name) for e in self.entries] + [5])
        lines = [f"{'check':<{width}}  {'value':>12}  {'threshold':>16}  result"]
        for e in self.entries:
            verdict = "PASS" if e.passed else ("info" if e.informational else "FAIL")
            lines.append(f"{e.name:<{width}}  {e.value:>12.4e}  {_fmt(e.threshold):>16}  {verdict}")
        return "\n".join(lines)


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return str(v)
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, (np.floating, np.integer)):
        return v.item()
    return v


def _fmt(th):
    if isinstance(th, tuple):
        return "[" + ", ".join(f"{x:g}" for x in th) + "]"
    return f"{th:.3g}"


def _timed(fn):
    def wrapper(*args, **kwargs):
        start = time.perf_counter()
        entry = fn(*args, **kwargs)
        entry.runtime = time.perf_counter() - start
        return entry

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


# ---------------------------------------------------------------------------
# library checks

UPSTREAM_CASES = ((1.4, 1.8, 1.0), (1.2, 2.5, 0.5), (2.0, 1.8, 2.0))


def sample_piston_speeds(up, count=20):
    """Interior points of the admissible window (upper end capped when unbounded)."""
    u1, uo = hugoniot.admissible_window(up)
    if not math.isfinite(uo):
        uo = u1 + 10.0 * (1.0 + u1)
    frac = (np.arange(count) + 0.5) / count
    return u1 + frac * (uo - u1)


@_timed
def check_eos_continuity(th=Thresholds()):
    worst = 0.0
    for g in (1.2, 1.4, 2.0):
        params = eos.EosParams(g)
        for s in (-1.0, 0.0, 1.0):
            es = math.exp(s)
            # lower-branch formulas continued to nu = 1
            lower = (
                0.5 * g * es - (g + 1.0) * es + (g * g + g) * es / (2.0 * (g - 1.0)),
                (g + 1.0) * es - g * es,
                -g * es,
            )
            pt = eos.ThermoPoint(1.0, s)
            upper = (eos.internal_energy(params, pt), eos.pressure(params, pt), eos.dp_dnu(params, pt))
            worst = max(worst, max(abs(a - b) for a, b in zip(lower, upper)))
            below = eos.ThermoPoint(1.0 - 1e-13, s)
            near = (eos.internal_energy(params, below), eos.pressure(params, below), eos.dp_dnu(params, below))
            worst = max(worst, max(abs(a - b) for a, b in zip(near, upper)))
    return ReportEntry("eos_continuity", worst, th.eos_continuity, worst < th.eos_continuity)


@_timed
def check_thermo_relation(th=Thresholds(), count=100):
    rng = np.random.default_rng(RNG_SEED)
    worst = 0.0
    h = 1e-6
    for _ in range(count):
        g = rng.uniform(1.1, 2.5)
        params = eos.EosParams(g)
        nu = rng.uniform(0.2, 3.0)
        s = rng.uniform(-1.0, 1.0)
        dnu, ds = rng.normal(size=2)
        plus = eos.ThermoPoint(nu + h * dnu, s + h * ds)
        minus = eos.ThermoPoint(nu - h * dnu, s - h * ds)
        de = eos.internal_energy(params, plus) - eos.internal_energy(params, minus)
        mid = eos.ThermoPoint(nu, s)
        rhs = 2.0 * h * (eos.temperature(params, mid) * ds - eos.pressure(params, mid) * dnu)
        scale = 2.0 * h * (abs(eos.temperature(params, mid) * ds) + abs(eos.pressure(params, mid) * dnu))
        worst = max(worst, abs(de - rhs) / scale)
    return ReportEntry("thermo_relation", worst, th.thermo_relation, worst < th.thermo_relation)


@_timed
def check_jump_oracle(th=Thresholds(), count=50):
    rng = np.random.default_rng(RNG_SEED + 1)
    worst = 0.0
    done = 0
    while done < count:
        g = rng.uniform(1.1, 2.5)
        nu0 = (g + 1.0) / g * rng.uniform(1.01, 2.5)
        p0 = rng.uniform(0.2, 5.0)
        up = hugoniot.UpstreamState(g, nu0, p0)
        # both branches; draws off the locus are rejected
        nu = nu0 * rng.uniform(0.05, 0.98)
        try:
            ref = hugoniot.downstream_closed_form(up, nu)
        except AdmissibilityError:
            continue
        new = hugoniot.solve_downstream(up, nu)
        err = max(
            abs(new.s - ref.s),
            abs(new.u - ref.u) / max(1.0, abs(ref.u)),
            abs(new.p - ref.p) / max(1.0, abs(ref.p)),
        )
        worst = max(worst, err)
        done += 1
    return ReportEntry("jump_oracle", worst, th.jump_oracle, worst < th.jump_oracle)


def _background_points():
    for case in UPSTREAM_CASES:
        up = hugoniot.UpstreamState(*case)
        for u in sample_piston_speeds(up):
            yield up, hugoniot.solve_from_piston_speed(up, float(u))


@_timed
def check_background_chain(th=Thresholds()):
    """sigma > max(u_iota, c0) and the Lax condition along the admissible window.

    The value is the smallest margin min(sigma - u, sigma - c0, Lax margins)
    over all samples; the check passes iff it is positive.
    """
    worst = math.inf
    failures = []
    for up, pt in _background_points():
        c_down = hugoniot.downstream_sound_speed(up, pt)
        margins = (pt.sigma - pt.u, pt.sigma - up.c0, c_down - pt.sigma)
        m = min(margins)
        worst = min(worst, m)
        if m <= 0.0:
            failures.append((up.gamma, up.nu0, round(pt.u, 6), ("sigma>u", "sigma>c0", "lax")[int(np.argmin(margins))]))
    detail = f"{len(failures)} of {3 * 20} samples fail"
    if failures:
        detail += "; first failures (gamma, nu0, u_iota, condition): " + repr(failures[:3])
    return ReportEntry("background_chain", worst, 0.0, worst > 0.0, detail=detail)


def _fd_slopes(shock, delta=1e-5):
    hi = shock.solve(delta)
    lo = shock.solve(-delta)
    return (hi[0] - lo[0]) / (2 * delta), (hi[1] - lo[1]) / (2 * delta)


@_timed
def check_boundary_dissipation(th=Thresholds()):
    worst = 0.0
    structural = True
    notes = []
    for up, pt in _background_points():
        try:
            maps = hugoniot.boundary_maps(up, pt)
        except InvariantViolation as exc:
            structural = False
            notes.append(str(exc))
            continue
        if not (abs(maps.h10) < 1.0 and maps.det_k > 0.0):
            structural = False
        d1, d2 = _fd_slopes(hugoniot.ShockBoundary(up, pt))
        worst = max(worst, abs(d1 - maps.h10), abs(d2 - maps.h20))
    ok = structural and worst < th.g_slope
    return ReportEntry("boundary_dissipation", worst, th.g_slope, ok, detail="; ".join(notes))


@_timed
def check_left_eigenvectors(th=Thresholds(), count=100):
    rng = np.random.default_rng(RNG_SEED + 2)
    up = hugoniot.UpstreamState(*UPSTREAM_CASES[0])
    pt = hugoniot.solve_from_piston_speed(up, 1.2)
    ref = riemann.ReferenceState.from_locus(up.gamma, pt)
    worst = 0.0
    for _ in range(count):
        v = rng.normal(size=3)
        phi = tuple(v / np.linalg.norm(v) * 0.1 * rng.uniform() ** (1.0 / 3.0))
        A = riemann.transformed_matrix(ref, phi)
        b2, b3 = riemann.coupling_coeffs(ref, phi)
        lam1, _, lam3 = riemann.eigenvalues(ref, phi[1])
        for row, lam in (((1.0, b2, b3), lam1), ((b3, b2, 1.0), lam3)):
            row = np.array(row)
            worst = max(worst, float(np.max(np.abs(row @ A - lam * row))))
    detail = "" if worst < th.eigen_residual else "coupling coefficient b2 disagrees with the eigen-identity"
    return ReportEntry("left_eigenvectors", worst, th.eigen_residual, worst < th.eigen_residual, detail=detail)


# ---------------------------------------------------------------------------
# series checks


def _sup_snapshots(series):
    return max(float(np.max(np.abs(s.phi_hat))) for s in series.snapshots)


@_timed
def check_background_preservation(series, th=Thresholds(), name="background_preservation"):
    cfg = series.cfg
    if cfg.epsilon != 0.0 or (cfg.hbar > 0.0 and series.background.ignition_on):
        raise ConfigurationError("background check needs epsilon = 0 and the reaction off", field="epsilon")
    tr = series.trace
    value = max(
        _sup_snapshots(series),
        float(np.max(tr["norm_c0"])),
        float(np.max(tr["norm_c1"])),
        float(np.max(tr["chi_dev"])),
        float(np.max(np.abs(series.history.chi_prime - series.chi0))),
    )
    return ReportEntry(name, value, th.background, value < th.background)


def _comparable(a, b):
    da, db = a.cfg.to_dict(), b.cfg.to_dict()
    da.pop("epsilon")
    db.pop("epsilon")
    return da == db


def linear_response_ratios(a, b):
    """Ratios (a / b) of sup C0 norm and sup |chi' - chi0|."""
    ra = float(np.max(a.trace["norm_c0"])) / float(np.max(b.trace["norm_c0"]))
    rc = float(np.max(a.trace["chi_dev"])) / float(np.max(b.trace["chi_dev"]))
    return ra, rc


@_timed
def check_linear_response(a, b, th=Thresholds(), name="linear_response", informational=False):
    """Sup-norm and front-speed ratios between runs at epsilon and epsilon / 2."""
    if not _comparable(a, b):
        raise ConfigurationError("runs differ in more than epsilon", field="epsilon")
    if a.cfg.epsilon == b.cfg.epsilon:
        return ReportEntry(name, 1.0, th.ratio_band, False, detail="degenerate input: identical epsilon",
                           informational=informational)
    expect = a.cfg.epsilon / b.cfg.epsilon
    lo, hi = (x * expect / 2.0 for x in th.ratio_band)
    ra, rc = linear_response_ratios(a, b)
    worst = ra if abs(ra - expect) >= abs(rc - expect) else rc
    ok = lo <= ra <= hi and lo <= rc <= hi
    return ReportEntry(name, worst, (lo, hi), ok, detail=f"norm ratio {ra:.6g}, front-speed ratio {rc:.6g}",
                       informational=informational)


def shock_residuals(series):
    """Per-step residuals of the jump relations along the tracked front.

    Returns (jump, speed, trajectory, lax_margin):
      jump       J1, J2 at the reconstructed downstream state,
      speed      recorded chi' against sqrt(-(p - p0) / (nu - nu0)),
      trajectory (chi_{k+1} - chi_k) / dt against the mean of the jump speeds,
                 which measures how well the discrete front obeys its ODE,
      lax_margin min(sigma - c0, c - sigma).
    """
    bg = series.background
    up = bg.upstream
    state = reconstruct_physical(bg.ref, bg.scaling, series.trace["shock_phi_hat"].T)
    jump = np.array([max(map(abs, hugoniot.rh_residuals(up, *row))) for row in zip(state.nu, state.s, state.u)])
    sigma_rh = np.sqrt(-(state.p - up.p0) / (state.nu - up.nu0))
    hist = series.history
    t, chi, chip = hist.t[1:], hist.chi[1:], hist.chi_prime[1:]
    speed = np.abs(chip - sigma_rh)
    traj = np.abs(np.diff(chi) / np.diff(t) - 0.5 * (sigma_rh[1:] + sigma_rh[:-1]))
    c_down = np.sqrt(up.gamma * np.exp(state.s))
    lax = np.minimum(chip - up.c0, c_down - chip)
    return jump, speed, traj, lax


@_timed
def check_shock_residuals(series, th=Thresholds(), name="shock_residuals"):
    jump, speed, traj, lax = shock_residuals(series)
    value = float(max(jump.max(), speed.max(), traj.max()))
    ok = value < th.shock_residual and bool(np.all(lax > 0.0))
    detail = f"jump {jump.max():.3e}, speed {speed.max():.3e}, trajectory {traj.max():.3e}, min Lax margin {lax.min():.3e}"
    return ReportEntry(name, value, th.shock_residual, ok, detail=detail)


@_timed
def check_shock_convergence(coarse, fine, th=Thresholds(), name="shock_residual_convergence"):
    rc = float(np.max(shock_residuals(coarse)[2]))
    rf = float(np.max(shock_residuals(fine)[2]))
    ratio = rc / rf if rf > 0.0 else math.inf
    return ReportEntry(name, ratio, th.convergence_ratio, ratio >= th.convergence_ratio,
                       detail=f"trajectory residual {rc:.3e} -> {rf:.3e}")


@_timed
def check_z_consistency(series, th=Thresholds(), name="z_consistency"):
    """Directly integrated Z_t = -kappa psi Z at fixed particles against the closed form."""
    pr = series.probes
    if not pr["x"].size:
        return ReportEntry(name, 0.0, th.z_consistency, True, detail="no probe reached by the front")
    cfg = series.cfg
    closed = z_field(series.history, cfg.kappa, series.history.t[-1], pr["x"], method=cfg.interpolation)
    value = float(np.max(np.abs(closed - pr["z_ode"])))
    return ReportEntry(name, value, th.z_consistency, value < th.z_consistency,
                       detail=f"{pr['x'].size} probes")


@_timed
def check_z_closed_form(th=Thresholds(), chi0=1.3, kappa=0.7, name="z_constant_speed"):
    """z_field on a constant-speed history against exp(-kappa (t - x / chi0))."""
    t = np.linspace(0.0, 5.0, 257)
    hist = ShockHistory.from_arrays(t, chi0 * t, np.full_like(t, chi0))
    worst = 0.0
    for tq in (0.37, 1.0, 4.99):
        x = np.linspace(0.0, chi0 * tq, 101)
        exact = np.exp(-kappa * (tq - x / chi0))
        worst = max(worst, float(np.max(np.abs(z_field(hist, kappa, tq, x) - exact))))
    return ReportEntry(name, worst, th.z_closed_form, worst < th.z_closed_form)


@_timed
def check_boundedness(series, th=Thresholds(), name="long_horizon_boundedness", informational=False):
    """Running max of the C0 norm after t_ref against its value at t_ref."""
    tr = series.trace
    t, norm = tr["t"], tr["norm_c0"]
    t_ref = th.growth_reference_time
    if t[-1] < t_ref:
        raise ConfigurationError(f"run must reach t = {t_ref}", field="t_end")
    at_ref = float(np.interp(t_ref, t, norm))
    later = float(np.max(norm[t >= t_ref]))
    if later == 0.0:
        return ReportEntry(name, 0.0, th.growth_factor, True, detail="identically zero",
                           informational=informational)
    value = later / at_ref if at_ref > 0.0 else math.inf
    return ReportEntry(name, value, th.growth_factor, value <= th.growth_factor,
                       detail=f"norm at t={t_ref:g}: {at_ref:.4e}, later max {later:.4e}",
                       informational=informational)


def c1_sup(series):
    """Sup over the snapshots of |d/dx| and |d/dt| (at fixed x) of (nu, u, p).

    Centered differences in xi and in time; one-sided at the ends.  The
    time derivative at fixed particle position is d/dtau - xi chi'/chi d/dxi.
    """
    snaps = series.snapshots
    if len(snaps) < 3:
        raise ConfigurationError("need at least three snapshots", field="snapshot_dt")
    xi = snaps[0].xi
    t = np.array([s.t for s in snaps])
    fields = np.array([[s.state.nu, s.state.u, s.state.p] for s in snaps])  # (time, var, node)
    chi = np.array([s.chi for s in snaps])[:, None, None]
    chip = np.array([s.chi_prime for s in snaps])[:, None, None]
    d_xi = np.gradient(fields, xi, axis=2)
    d_tau = np.gradient(fields, t, axis=0)
    d_x = d_xi / chi
    d_t = d_tau - xi * chip / chi * d_xi
    return float(max(np.max(np.abs(d_x)), np.max(np.abs(d_t))))


def _spread(values):
    values = np.asarray(values, dtype=float)
    return float(values.max() / values.min() - 1.0)


@_timed
def check_c1_trace(series_list, th=Thresholds(), name="c1_stability", informational=False):
    """C = sup |D(nu, u, p)| / epsilon must be stable across the runs."""
    eps = [s.cfg.epsilon for s in series_list]
    sups = [c1_sup(s) for s in series_list]
    if all(e == 0.0 for e in eps):
        value = max(sups)
        return ReportEntry(name, value, th.zero_derivative, value < th.zero_derivative,
                           informational=informational)
    if any(e == 0.0 for e in eps):
        raise ConfigurationError("mix of zero and nonzero epsilon", field="epsilon")
    consts = [s / e for s, e in zip(sups, eps)]
    value = _spread(consts)
    return ReportEntry(name, value, th.spread, value < th.spread,
                       detail="C = " + ", ".join(f"{c:.5g}" for c in consts), informational=informational)


@_timed
def check_front_stability(series_list, th=Thresholds(), name="front_speed_stability"):
    """sup |chi' - chi0| / epsilon must be stable across the runs."""
    consts = [float(np.max(s.trace["chi_dev"])) / s.cfg.epsilon for s in series_list]
    value = _spread(consts)
    return ReportEntry(name, value, th.spread, value < th.spread,
                       detail="C = " + ", ".join(f"{c:.5g}" for c in consts))


@_timed
def check_determinism(cfg, workdir, name="determinism"):
    """Two runs of the same scenario must write byte-identical CSV files."""
    from pathlib import Path

    from .cli.writers import write_run

    digests = []
    for k in range(2):
        out = Path(workdir) / f"rep{k}"
        files = write_run(run(cfg), out)
        digests.append({p.name: p.read_bytes() for p in sorted(files) if p.suffix == ".csv"})
    same = digests[0].keys() == digests[1].keys() and all(digests[0][k] == digests[1][k] for k in digests[0])
    return ReportEntry(name, 0.0 if same else 1.0, 0.0, same, detail=f"{len(digests[0])} CSV files compared")


def _merge(name, entries, informational=False):
    """Combine sub-results into one acceptance entry (all must pass)."""
    failing = [e for e in entries if not e.passed]
    worst = failing[0] if failing else entries[0]
    detail = "; ".join(f"{e.name}: {e.value:.4g} vs {_fmt(e.threshold)} {'ok' if e.passed else 'FAIL'}"
                       + (f" ({e.detail})" if e.detail else "") for e in entries)
    return ReportEntry(name, worst.value, worst.threshold, not failing,
                       runtime=sum(e.runtime for e in entries), detail=detail, informational=informational)


# ---------------------------------------------------------------------------
# suite

ACCEPTANCE = (
    "1_eos_continuity",
    "2_thermo_relation",
    "3_jump_oracle",
    "4_background_chain",
    "5_boundary_dissipation",
    "6_left_eigenvectors",
    "7_background_preservation",
    "8_z_consistency",
    "9_linear_response",
    "10_shock_residuals",
    "11_long_horizon_boundedness",
    "12_determinism",
)


def _run_many(cfgs, workers):
    if workers <= 1:
        return [run(c) for c in cfgs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run, cfgs))


def _background_temperature(cfg):
    pt = hugoniot.solve_from_piston_speed(cfg.upstream, cfg.u_iota)
    return eos.temperature(eos.EosParams(cfg.gamma), eos.ThermoPoint(pt.nu, pt.s))


def acceptance_check(key, base, workdir, th=Thresholds(), workers=1):
    """Run one acceptance criterion for the scenario ``base``; returns a ReportEntry."""
    start = time.perf_counter()
    entry = _acceptance_check(key, base, workdir, th, workers)
    entry.name = key
    entry.runtime = time.perf_counter() - start
    return entry


def _acceptance_check(key, base, workdir, th, workers):
    if key == "1_eos_continuity":
        e = check_eos_continuity(th)
    elif key == "2_thermo_relation":
        e = check_thermo_relation(th)
    elif key == "3_jump_oracle":
        e = check_jump_oracle(th)
    elif key == "4_background_chain":
        e = check_background_chain(th)
    elif key == "5_boundary_dissipation":
        e = check_boundary_dissipation(th)
    elif key == "6_left_eigenvectors":
        e = check_left_eigenvectors(th)
    elif key == "7_background_preservation":
        quiet = replace(base, epsilon=0.0, T_i=2.0 * _background_temperature(base))
        cfgs = [replace(quiet, n_cells=n, t_end=10.0) for n in (100, 400)]
        series = _run_many(cfgs, workers)
        e = _merge(key, [check_background_preservation(s, th, name=f"n={s.cfg.n_cells}") for s in series])
    elif key == "8_z_consistency":
        s = run(replace(base, n_cells=800, t_end=min(base.t_end, 2.0)))
        e = _merge(key, [check_z_consistency(s, th, name="n=800"), check_z_closed_form(th)])
    elif key == "9_linear_response":
        eps = (1e-3, 5e-4, 2.5e-4)
        series = _run_many([replace(base, epsilon=x) for x in eps], workers)
        e = _merge(key, [
            check_linear_response(series[0], series[1], th),
            check_front_stability(series, th),
            check_c1_trace(series, th),
        ])
    elif key == "10_shock_residuals":
        t_end = min(base.t_end, 2.0)
        coarse, fine = _run_many([replace(base, n_cells=n, t_end=t_end) for n in (400, 800)], workers)
        e = _merge(key, [check_shock_residuals(coarse, th, name="n=400"), check_shock_convergence(coarse, fine, th)])
    elif key == "11_long_horizon_boundedness":
        s = run(replace(base, epsilon=1e-3, n_cells=400, t_end=100.0))
        e = check_boundedness(s, th)
    elif key == "12_determinism":
        e = check_determinism(replace(base, n_cells=100, t_end=1.0), workdir)
    else:
        raise KeyError(key)
    return e


def informational_probes(base, th=Thresholds(), workers=1):
    """Checks that are allowed to fail: large epsilon, large hbar, kinked piston."""
    from .simulation.config import PistonProfile

    entries = []
    cfgs = [replace(base, epsilon=0.1), replace(base, epsilon=0.05)]
    try:
        a, b = _run_many(cfgs, workers)
        entries.append(check_linear_response(a, b, th, name="info_large_epsilon", informational=True))
    except (NumericalError, ArithmeticError) as exc:
        entries.append(ReportEntry("info_large_epsilon", math.nan, th.ratio_band, False, detail=str(exc),
                                   informational=True))
    try:
        s = run(replace(base, hbar=10.0, t_end=20.0))
        entries.append(check_boundedness(s, th, name="info_large_hbar", informational=True))
    except (NumericalError, ArithmeticError) as exc:
        entries.append(ReportEntry("info_large_hbar", math.nan, th.growth_factor, False, detail=str(exc),
                                   informational=True))
    kinked = replace(base, piston=PistonProfile("kinked_ramp", tau=1.0))
    try:
        series = _run_many([replace(kinked, epsilon=x) for x in (1e-3, 5e-4, 2.5e-4)], workers)
        entries.append(check_c1_trace(series, th, name="info_kinked_piston", informational=True))
    except (NumericalError, ArithmeticError) as exc:
        entries.append(ReportEntry("info_kinked_piston", math.nan, th.spread, False, detail=str(exc),
                                   informational=True))
    return entries


def run_suite(base, workdir, th=Thresholds(), workers=1, keys=ACCEPTANCE, informational=False, progress=None):
    report = VerificationReport()
    for key in keys:
        entry = report.add(acceptance_check(key, base, workdir, th, workers))
        if progress is not None:
            progress(entry)
    if informational:
        for entry in informational_probes(base, th, workers):
            report.add(entry)
            if progress is not None:
                progress(entry)
    return report
