"""
Front-tracking integrator for the perturbed piston problem.

The domain between the piston (x = 0) and the shock (x = chi(t)) is mapped to
xi = x / chi(t) in [0, 1], so both boundaries sit at fixed nodes.  For a
field w(t, x) = W(t, xi),

    w_t + lam w_x = W_t + (lam - xi chi') / chi W_xi,

which shifts every characteristic speed by -xi chi'.  Family 1 still moves
left everywhere and family 3 right everywhere (the shock is subsonic
relative to the gas behind it), while the entropy family acquires the
left-going speed -xi chi' / chi.

Each family is advanced in characteristic form: its left eigenvector
multiplies Phi_t + a_i Phi_xi, and Phi_xi is differenced from the upwind side
of a_i.  The three projected equations are then solved for Phi_t node by
node; the 2x2 block couples Phi1_t and Phi3_t through b3 only.  Boundary
nodes replace the incoming families with the piston and shock relations.
Time stepping is Heun's method on (Phi, chi) jointly.

The state is stored in the scaled variables Phi_hat; coefficients are
evaluated on the unscaled Phi.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .. import eos, hugoniot, riemann
from ..errors import CFLError, NumericalError, SimulationError, StateEscapeError
from .config import ScenarioConfig
from .history import ShockHistory, z_field

log = logging.getLogger(__name__)

LAX_MARGIN = 1e-12
CFL_LIMIT = 1.0


@dataclass
class GasState:
    nu: np.ndarray
    u: np.ndarray
    p: np.ndarray
    s: np.ndarray
    T: np.ndarray

    def total_energy(self, Z, hbar):
        return 0.5 * self.u**2 + self.T + Z * hbar


@dataclass
class FieldSnapshot:
    t: float
    chi: float
    chi_prime: float
    xi: np.ndarray
    phi_hat: np.ndarray
    state: GasState
    Z: np.ndarray

    @property
    def x(self):
        return self.xi * self.chi


@dataclass
class Background:
    upstream: hugoniot.UpstreamState
    point: hugoniot.ShockLocusPoint
    maps: hugoniot.BoundaryMaps
    scaling: riemann.ScalingParams
    ref: riemann.ReferenceState
    ignition_on: bool

    @property
    def chi0(self):
        return self.point.sigma


@dataclass
class TimeSeries:
    cfg: ScenarioConfig
    background: Background
    snapshots: list
    history: ShockHistory
    trace: dict
    probes: dict
    warnings: list = field(default_factory=list)

    @property
    def chi0(self):
        return self.background.chi0


def reconstruct_physical(ref, scaling, phi_hat, check=True):
    """GasState behind the scaled diagonal values ``phi_hat`` (shape (3, n))."""
    phi = riemann.unscale(scaling, tuple(np.asarray(v, dtype=float) for v in phi_hat))
    nu, s, u = riemann.from_diagonal(ref, phi)
    nu = np.asarray(nu, dtype=float)
    s = np.asarray(s, dtype=float)
    if check and not np.all((nu > 0.0) & (nu < 1.0)):
        raise StateEscapeError(f"specific volume left (0, 1): range [{nu.min()}, {nu.max()}]")
    params = eos.EosParams(ref.gamma)
    pt = eos.ThermoPoint(nu, s) if np.all(nu > 0.0) else None
    if pt is None:
        raise StateEscapeError("non-positive specific volume")
    p = np.asarray(eos.pressure(params, pt))
    T = np.asarray(eos.temperature(params, pt))
    return GasState(nu=nu, u=np.asarray(u, dtype=float), p=p, s=s, T=T)


def build_background(cfg):
    up = cfg.upstream
    bg = hugoniot.solve_from_piston_speed(up, cfg.u_iota)
    maps = hugoniot.boundary_maps(up, bg)
    scaling = riemann.choose_scaling(maps)
    if scaling.beta_capped:
        log.warning("h20 vanishes; beta capped at %g", scaling.beta)
    ref = riemann.ReferenceState.from_locus(cfg.gamma, bg)
    return Background(up, bg, maps, scaling, ref, cfg.ignition_on_background(bg))


class Simulation:
    """Mutable integration state for one scenario; see ``init_scenario``."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.background = bg = build_background(cfg)
        up, pt, ref, sc = bg.upstream, bg.point, bg.ref, bg.scaling
        self.shock = hugoniot.ShockBoundary(up, pt, radius=cfg.shock_map_radius)
        g = cfg.gamma
        self.g = g
        self.s_i = pt.s
        self.nu_i = pt.nu
        self.lam_b = ref.lambda_b
        self.shift = ref.volume_shift
        self.b2_coef = 2.0 * math.sqrt(math.exp(pt.s)) * ((g + 1.0) - g * pt.nu)
        self.e_const = (g * g + g) / (2.0 * (g - 1.0))
        self.nu0 = up.nu0
        self.p0 = up.p0
        self.c0 = up.c0
        self.alpha = sc.alpha
        self.beta = sc.beta
        self.chi0 = pt.sigma
        self.n = cfg.n_cells
        self.xi = np.linspace(0.0, 1.0, self.n + 1)
        self.dxi = 1.0 / self.n
        self.reacting = cfg.hbar > 0.0
        self.history = ShockHistory()
        self._warned_piston = False

        t0 = cfg.seed_time
        phi = self._linear_seed(t0)
        self._apply_piston(phi, t0)
        self._apply_shock(phi)
        self.t = t0
        self.chi = self.chi0 * t0
        self.phi = phi
        self.chi_prime = self.shock_speed(phi)
        self.history.append(0.0, 0.0, self.chi0)
        self.history.append(self.t, self.chi, self.chi_prime)
        self.steps = 0

    # -- seeding -----------------------------------------------------------

    def _linear_seed(self, t0):
        """Leading-order solution A t + B x near the corner (t, x) = (0, 0).

        The piston perturbation grows like epsilon g'(0) t and the reaction
        source is frozen at its background value; the shock relations are
        linearised through h10, h20.  Zero for the unperturbed inert case.
        """
        cfg = self.cfg
        lam, chi0 = self.lam_b, self.chi0
        h10, h20 = self.background.maps.h10, self.background.maps.h20
        d = 2.0 * cfg.epsilon * cfg.piston.dg(0.0)
        q0 = self._source_scalar(self.background.point)
        src = self.lam_b * self.shift * q0
        r = chi0 / lam
        a1 = (h10 * d * (1.0 - r) + (1.0 + h10) * src * r) / ((1.0 + r) - h10 * (1.0 - r))
        a3 = a1 + d
        b1 = (a1 - src) / lam
        b3 = (src - a3) / lam
        b2 = (h20 * (a3 + b3 * chi0) - q0) / chi0
        x = self.xi * chi0 * t0
        phi = np.empty((3, self.n + 1))
        phi[0] = a1 * t0 + b1 * x
        phi[1] = q0 * t0 + b2 * x
        phi[2] = a3 * t0 + b3 * x
        return phi

    def _source_scalar(self, pt):
        cfg = self.cfg
        if not self.reacting:
            return 0.0
        T = eos.temperature(eos.EosParams(self.g), eos.ThermoPoint(pt.nu, pt.s))
        psi = float(cfg.ignition.psi(T, cfg.T_i))
        if psi == 0.0:
            return 0.0
        return psi * cfg.kappa * cfg.hbar / max(T, cfg.T_i + 1e-12)

    # -- boundary relations ------------------------------------------------

    def _apply_piston(self, phi, t):
        bdot = self.cfg.piston_velocity(t)
        if bdot <= 0.0 and not self._warned_piston:
            log.warning("piston velocity %g is not positive at t = %g", bdot, t)
            self._warned_piston = True
        phi[2, 0] = phi[0, 0] + 2.0 * (bdot - self.cfg.u_iota)

    def _apply_shock(self, phi):
        p3 = phi[2, -1]
        try:
            p1, p2 = self.shock.solve(p3, guess=(phi[0, -1], phi[1, -1]))
        except NumericalError as exc:
            raise SimulationError(f"shock boundary solve failed: {exc}", self.snapshot()) from exc
        phi[0, -1] = p1
        phi[1, -1] = p2

    def shock_speed(self, phi):
        p1, p2, p3 = phi[:, -1]
        nu = -(p1 + p3) / (2.0 * self.lam_b) + self.shift * p2 + self.nu_i
        es = math.exp(p2 + self.s_i)
        p = es * ((self.g + 1.0) - self.g * nu)
        return math.sqrt(-(p - self.p0) / (nu - self.nu0))

    # -- right-hand side ---------------------------------------------------

    def _derivatives(self, phi):
        d = np.diff(phi, axis=1)
        if self.cfg.order == 1:
            return d / self.dxi, d / self.dxi
        slope = np.zeros_like(phi)
        lo, hi = d[:, :-1], d[:, 1:]
        slope[:, 1:-1] = np.where(lo * hi > 0.0, np.sign(lo) * np.minimum(np.abs(lo), np.abs(hi)), 0.0)
        slope[:, 0] = d[:, 0]
        slope[:, -1] = d[:, -1]
        ds = np.diff(slope, axis=1)
        right = (d - 0.5 * ds) / self.dxi
        left = (d + 0.5 * ds) / self.dxi
        # right[:, j] serves node j (j < n); left[:, j] serves node j + 1
        return right, left

    def _rhs(self, phi, t, chi, chip):
        cfg = self.cfg
        g = self.g
        p1, p2, p3 = phi
        es = np.exp(p2 + self.s_i)
        c = np.sqrt(g * es)
        denom = c + self.lam_b
        b3 = (c - self.lam_b) / denom
        b2 = (c * (p1 + p3) - self.b2_coef * np.sqrt(es) * p2) / denom
        nu = -(p1 + p3) / (2.0 * self.lam_b) + self.shift * p2 + self.nu_i
        if not np.all((nu > 0.0) & (nu < 1.0)):
            raise StateEscapeError(
                f"specific volume left (0, 1) at t = {t}: [{nu.min()}, {nu.max()}]", self.snapshot()
            )
        xi = self.xi

        if self.reacting:
            T = es * (0.5 * g * nu * nu - (g + 1.0) * nu + self.e_const)
            psi = cfg.ignition.psi(T, cfg.T_i)
            born = self.history.inverse(xi * chi, method=cfg.interpolation, extrapolate=True)
            Z = np.exp(-cfg.kappa * (t - born))
            Z[-1] = 1.0
            Tq = np.where(psi > 0.0, np.maximum(T, cfg.T_i + 1e-12), T)
            q = psi * cfg.kappa * cfg.hbar * Z / Tq
            src = ((1.0 + b3) * self.lam_b * self.shift + b2) * q
        else:
            q = 0.0
            src = 0.0

        inv_chi = 1.0 / chi
        a1 = (-c - xi * chip) * inv_chi
        a3 = (c - xi * chip) * inv_chi
        a2 = -xi * chip * inv_chi
        right, left = self._derivatives(phi)

        n = self.n
        if self.reacting:
            q_r, q_l = q[:-1], q[1:]
            s_r, s_l = src[:-1], src[1:]
        else:
            q_r = q_l = s_r = s_l = 0.0
        # family 1 and 2 at nodes 0..n-1, family 3 at nodes 1..n
        P1 = -a1[:-1] * (right[0] + b2[:-1] * right[1] + b3[:-1] * right[2]) + s_r
        P2 = -a2[:-1] * right[1] + q_r
        P3 = -a3[1:] * (b3[1:] * left[0] + b2[1:] * left[1] + left[2]) + s_l

        out = np.empty_like(phi)
        bi2 = b2[1:n]
        bi3 = b3[1:n]
        f2 = P2[1:]
        r1 = P1[1:] - bi2 * f2
        r3 = P3[:-1] - bi2 * f2
        det = 1.0 - bi3 * bi3
        out[0, 1:n] = (r1 - bi3 * r3) / det
        out[1, 1:n] = f2
        out[2, 1:n] = (r3 - bi3 * r1) / det

        # piston node: Phi3 follows Phi1 + 2 (B' - b0)
        acc = 2.0 * cfg.piston_acceleration(t)
        f2 = P2[0]
        f1 = (P1[0] - b2[0] * f2 - b3[0] * acc) / (1.0 + b3[0])
        out[0, 0], out[1, 0], out[2, 0] = f1, f2, f1 + acc

        # shock node: Phi1, Phi2 slaved to Phi3 through the shock maps
        dg1, dg2 = self.shock.slopes(*phi[:, -1])
        f3 = P3[-1] / (1.0 + b3[-1] * dg1 + b2[-1] * dg2)
        out[0, -1], out[1, -1], out[2, -1] = dg1 * f3, dg2 * f3, f3
        return out, c

    def stable_dt(self, phi=None, chi=None, chip=None):
        phi = self.phi if phi is None else phi
        chi = self.chi if chi is None else chi
        chip = self.chi_prime if chip is None else chip
        c = np.sqrt(self.g * np.exp(phi[1] + self.s_i))
        speed = np.max(np.maximum(c + self.xi * chip, np.abs(c - self.xi * chip))) / chi
        return self.cfg.cfl * self.dxi / speed

    # -- stepping ----------------------------------------------------------

    def step(self, dt_cap=None):
        """Advance one Heun step; returns the step size taken."""
        cfg = self.cfg
        if cfg.cfl > CFL_LIMIT:
            raise CFLError(f"Courant number {cfg.cfl} exceeds the stability limit {CFL_LIMIT}", self.snapshot())
        dt = self.stable_dt()
        if dt_cap is not None:
            dt = min(dt, dt_cap)
        if not dt >= cfg.dt_min:
            raise CFLError(f"time step {dt:.3e} below floor {cfg.dt_min:.1e}", self.snapshot())

        t, chi, chip, phi = self.t, self.chi, self.chi_prime, self.phi
        k1, _ = self._rhs(phi, t, chi, chip)
        t1 = t + dt
        phi1 = phi + dt * k1
        chi1 = chi + dt * chip
        self._apply_piston(phi1, t1)
        self._apply_shock(phi1)
        chip1 = self.shock_speed(phi1)
        k2, _ = self._rhs(phi1, t1, chi1, chip1)
        new = 0.5 * (phi + phi1 + dt * k2)
        chi_new = 0.5 * (chi + chi1 + dt * chip1)
        self._apply_piston(new, t1)
        self._apply_shock(new)
        chip_new = self.shock_speed(new)
        if not np.all(np.isfinite(new)):
            raise SimulationError(f"non-finite values at t = {t1}", self.snapshot())

        self.t, self.chi, self.chi_prime, self.phi = t1, chi_new, chip_new, new
        self._check_front()
        self.history.append(t1, chi_new, chip_new)
        self.steps += 1
        return dt

    def _check_front(self):
        p1, p2, p3 = self.phi[:, -1]
        nu = -(p1 + p3) / (2.0 * self.lam_b) + self.shift * p2 + self.nu_i
        c_down = math.sqrt(self.g * math.exp(p2 + self.s_i))
        sigma = self.chi_prime
        if not (nu < 1.0 and self.c0 + LAX_MARGIN < sigma < c_down - LAX_MARGIN):
            raise SimulationError(
                f"shock at t = {self.t} fails the Lax condition: c0 = {self.c0}, "
                f"sigma = {sigma}, c = {c_down}",
                self.snapshot(),
            )

    @property
    def phi_hat(self):
        out = self.phi.copy()
        out[0] /= self.alpha
        out[1] *= self.beta
        return out

    def snapshot(self):
        phi_hat = self.phi_hat
        try:
            state = reconstruct_physical(self.background.ref, self.background.scaling, phi_hat, check=False)
        except NumericalError:
            state = None
        x = self.xi * self.chi
        if len(self.history) and self.history.t[-1] >= self.t:
            Z = z_field(self.history, self.cfg.kappa, self.t, np.minimum(x, self.history.position(self.t)),
                        method=self.cfg.interpolation)
        else:
            Z = np.exp(-self.cfg.kappa * (self.t - self.history.inverse(x, extrapolate=True)))
        return FieldSnapshot(
            t=self.t, chi=self.chi, chi_prime=self.chi_prime, xi=self.xi.copy(),
            phi_hat=phi_hat, state=state, Z=np.asarray(Z, dtype=float),
        )


def init_scenario(cfg):
    return Simulation(cfg)


class _Probes:
    """Fixed Lagrangian positions along which Z_t = -kappa psi Z is integrated directly."""

    def __init__(self, sim, count):
        cfg = sim.cfg
        reach = 0.9 * sim.chi0 * cfg.t_end
        self.x = reach * (np.arange(count) + 1.0) / (count + 1.0)
        self.birth = np.full(count, np.nan)
        self.z = np.ones(count)
        self.psi = np.zeros(count)
        self.kappa = cfg.kappa

    def _psi_at(self, sim, x):
        state = reconstruct_physical(sim.background.ref, sim.background.scaling, sim.phi_hat, check=False)
        T = np.interp(x, sim.xi * sim.chi, state.T)
        return sim.cfg.ignition.psi(T, sim.cfg.T_i)

    def update(self, sim, t_old, chi_old, dt):
        if not self.x.size:
            return
        alive = ~np.isnan(self.birth)
        new_born = (~alive) & (self.x <= sim.chi) & (self.x > chi_old)
        if not (np.any(alive) or np.any(new_born)):
            return
        psi_new = self._psi_at(sim, np.minimum(self.x, sim.chi))
        if np.any(alive):
            avg = 0.5 * (self.psi[alive] + psi_new[alive])
            self.z[alive] *= np.exp(-self.kappa * avg * dt)
        if np.any(new_born):
            frac = (self.x[new_born] - chi_old) / (sim.chi - chi_old)
            self.birth[new_born] = t_old + frac * dt
            self.z[new_born] = np.exp(-self.kappa * psi_new[new_born] * (sim.t - self.birth[new_born]))
        self.psi = psi_new


def _c1_norm(sim, prev_hat, dt):
    ph = sim.phi_hat
    dxi = np.gradient(ph, sim.xi, axis=1)
    dx = dxi / sim.chi
    dt_fixed_xi = (ph - prev_hat) / dt
    dtx = dt_fixed_xi - sim.xi * sim.chi_prime / sim.chi * dxi
    return float(max(np.max(np.abs(dx)), np.max(np.abs(dtx)))), ph


def _output_cap(sim, remaining):
    # split the approach to an output time evenly instead of leaving a sliver step
    dt = sim.stable_dt()
    if remaining <= dt:
        return remaining
    if remaining < 2.0 * dt:
        return 0.5 * remaining
    return None


def run(cfg, progress=None):
    """Integrate ``cfg`` from the seed time to ``cfg.t_end``."""
    sim = init_scenario(cfg)
    out_dt = cfg.output_interval
    snapshots = [sim.snapshot()]
    next_out = out_dt
    probes = _Probes(sim, cfg.z_probes)
    prev_hat = sim.phi_hat
    rows = {k: [] for k in ("t", "chi", "chi_prime", "norm_c0", "norm_c1", "chi_dev")}
    shock_hat = []

    def record(c1):
        rows["t"].append(sim.t)
        rows["chi"].append(sim.chi)
        rows["chi_prime"].append(sim.chi_prime)
        rows["norm_c0"].append(float(np.max(np.abs(prev_hat))))
        rows["norm_c1"].append(c1)
        rows["chi_dev"].append(abs(sim.chi_prime - sim.chi0))
        shock_hat.append(prev_hat[:, -1].copy())

    record(0.0)
    while sim.t < cfg.t_end * (1.0 - 1e-15):
        target = min(next_out, cfg.t_end)
        t_old, chi_old = sim.t, sim.chi
        dt = sim.step(dt_cap=_output_cap(sim, target - sim.t))
        probes.update(sim, t_old, chi_old, dt)
        c1, prev_hat = _c1_norm(sim, prev_hat, dt)
        record(c1)
        if sim.t >= target * (1.0 - 1e-14):
            snapshots.append(sim.snapshot())
            next_out += out_dt
            if progress is not None:
                progress(sim)

    trace = {k: np.asarray(v) for k, v in rows.items()}
    trace["shock_phi_hat"] = np.asarray(shock_hat)
    born = ~np.isnan(probes.birth)
    probe_data = {"x": probes.x[born], "birth": probes.birth[born], "z_ode": probes.z[born]}
    warnings = []
    if sim._warned_piston:
        warnings.append("piston velocity crossed zero")
    if sim.background.scaling.beta_capped:
        warnings.append("beta capped because h20 vanishes")
    return TimeSeries(
        cfg=cfg, background=sim.background, snapshots=snapshots, history=sim.history,
        trace=trace, probes=probe_data, warnings=warnings,
    )
