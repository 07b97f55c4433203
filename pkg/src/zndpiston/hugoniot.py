"""
Rankine-Hugoniot machinery for a shock running into gas at rest.

The upstream state is (nu0, 0, p0) with Z = 1.  Downstream states behind the
shock live on the lower branch of the equation of state (nu < 1) in the
regime this package simulates; the polytropic branch is supported by the
locus routines only, to follow the locus up to the sonic limit nu -> nu0.

Two independent routes compute a locus point:

* ``downstream_closed_form`` eliminates exp(s) from the energy relation,
  which is affine in exp(s), and recovers u and the shock speed afterwards.
* ``solve_downstream`` runs a Newton iteration on the two residuals
  returned by ``rh_residuals``.

The two are expected to agree to roundoff and are cross-checked in tests and
in the verification suite.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import eos
from .errors import (
    AdmissibilityError,
    ConfigurationError,
    DomainError,
    InvariantViolation,
    ShockSolveError,
)

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 50
G_MAP_RADIUS = 0.1


@dataclass(frozen=True)
class UpstreamState:
    """Quiescent unburnt gas ahead of the shock."""

    gamma: float
    nu0: float
    p0: float

    def __post_init__(self):
        eos.EosParams(self.gamma)
        threshold = (self.gamma + 1.0) / self.gamma
        if not self.nu0 > threshold:
            raise ConfigurationError(
                f"nu0 = {self.nu0} violates the upstream hypothesis "
                f"nu0 > (gamma+1)/gamma = {threshold:.6g}",
                field="nu0",
            )
        if not self.p0 > 0.0:
            raise ConfigurationError(f"p0 = {self.p0} must be positive", field="p0")

    @property
    def params(self):
        return eos.EosParams(self.gamma)

    @property
    def s0(self):
        return eos.entropy_from_pressure(self.params, self.nu0, self.p0)

    @property
    def c0(self):
        return eos.sound_speed(self.params, eos.ThermoPoint(self.nu0, self.s0))

    @property
    def e0(self):
        return eos.internal_energy(self.params, eos.ThermoPoint(self.nu0, self.s0))


@dataclass(frozen=True)
class ShockLocusPoint:
    nu: float
    u: float
    p: float
    s: float
    sigma: float


@dataclass(frozen=True)
class BoundaryMaps:
    """Linearised shock-boundary relations at the background state.

    ``kmat`` is ((k11, k12), (k21, k22)); ``kt11`` is the Phi_3 analogue of
    k11 (the other tilde entries coincide with the plain ones).
    """

    h10: float
    h20: float
    kmat: tuple
    kt11: float
    det_k: float


def _energy_bracket(up, nu):
    # coefficient of exp(s) in J2, times 2
    g, nu0 = up.gamma, up.nu0
    return (g + 1.0) * (nu + nu0) - (g * g + g) / (g - 1.0) - g * nu * nu0


def _upstream_term(up, nu):
    g, nu0 = up.gamma, up.nu0
    return (g + 1.0) / (2.0 * (g - 1.0)) * nu0 - 0.5 * nu


def locus_lower_limit(up):
    """Smallest specific volume reachable on the locus (0 when unbounded below).

    The energy relation has a positive solution exp(s) only where the
    bracket multiplying exp(s) is negative.  For nu0 >= gamma/(gamma-1) that
    fails near nu = 0 and the locus ends at a finite compression limit.
    """
    g, nu0 = up.gamma, up.nu0
    num = (g + 1.0) * nu0 - g * (g + 1.0) / (g - 1.0)
    slope = g * nu0 - (g + 1.0)
    return max(0.0, num / slope)


def rh_residuals(up, nu, s, u):
    """Residuals (J1, J2) of the jump relations for a lower-branch downstream state.

    J1 is the momentum/mass relation solved for u, J2 the energy relation
    with the shock speed eliminated.
    """
    if not (0.0 < nu < 1.0) or not nu < up.nu0:
        raise DomainError(f"rh_residuals needs 0 < nu < 1, got nu = {nu}")
    g, nu0, p0 = up.gamma, up.nu0, up.p0
    es = math.exp(s)
    radicand = -((g + 1.0) * es - g * es * nu - p0) * (nu - nu0)
    if radicand < 0.0:
        raise DomainError(f"(nu, s) = ({nu}, {s}) is off the compressive locus domain")
    j1 = u - math.sqrt(radicand)
    j2 = 0.5 * es * _energy_bracket(up, nu) + p0 * _upstream_term(up, nu)
    return j1, j2


def _hugoniot_residuals(up, nu, s, u):
    # branch-agnostic form of the same relations, in terms of e and p
    pt = eos.ThermoPoint(nu, s)
    p = eos.pressure(up.params, pt)
    e = eos.internal_energy(up.params, pt)
    radicand = -(p - up.p0) * (nu - up.nu0)
    if radicand < 0.0:
        raise DomainError(f"(nu, s) = ({nu}, {s}) is off the compressive locus domain")
    j1 = u - math.sqrt(radicand)
    j2 = -(e - up.e0 + 0.5 * (p + up.p0) * (nu - up.nu0))
    return j1, j2


def _point_from_es(up, nu, es):
    if not es > 0.0:
        raise AdmissibilityError(f"no admissible downstream state at nu = {nu}")
    p = eos.pressure(up.params, eos.ThermoPoint(nu, math.log(es)))
    radicand = -(p - up.p0) * (nu - up.nu0)
    if not radicand > 0.0:
        raise AdmissibilityError(f"downstream pressure does not exceed p0 at nu = {nu}")
    u = math.sqrt(radicand)
    sigma = math.sqrt(-(p - up.p0) / (nu - up.nu0))
    return ShockLocusPoint(nu=nu, u=u, p=p, s=math.log(es), sigma=sigma)


def downstream_closed_form(up, nu):
    """Locus point at specific volume ``nu`` by direct elimination."""
    g, nu0, p0 = up.gamma, up.nu0, up.p0
    if not (0.0 < nu < nu0):
        raise DomainError(f"need 0 < nu < nu0, got nu = {nu}")
    if nu < 1.0:
        es = -(p0 * _upstream_term(up, nu)) / (0.5 * _energy_bracket(up, nu))
    else:
        # polytropic branch: classical Hugoniot curve
        den = (g + 1.0) * nu - (g - 1.0) * nu0
        if den <= 0.0:
            raise AdmissibilityError(f"no admissible downstream state at nu = {nu}")
        p = p0 * ((g + 1.0) * nu0 - (g - 1.0) * nu) / den
        es = p * nu**g
    return _point_from_es(up, nu, es)


def solve_downstream(up, nu, tol=1e-13, max_iter=NEWTON_MAX_ITER):
    """Locus point at ``nu`` by Newton iteration on the jump residuals.

    The unknowns are (exp(s), u); both residuals are smooth in them and the
    iteration starts from the upstream entropy, where the pressure already
    exceeds p0.
    """
    g, nu0, p0 = up.gamma, up.nu0, up.p0
    if not (0.0 < nu < nu0):
        raise DomainError(f"need 0 < nu < nu0, got nu = {nu}")
    residuals = rh_residuals if nu < 1.0 else _hugoniot_residuals
    params = up.params
    y = math.exp(up.s0)
    p = eos.pressure(params, eos.ThermoPoint(nu, up.s0))
    u = math.sqrt(-(p - p0) * (nu - nu0))
    for _ in range(max_iter):
        s = math.log(y)
        j1, j2 = residuals(up, nu, s, u)
        if max(abs(j1), abs(j2)) < tol:
            return _finish_point(up, nu, s, u)
        pt = eos.ThermoPoint(nu, s)
        p = eos.pressure(params, pt)
        e = eos.internal_energy(params, pt)
        radicand = -(p - p0) * (nu - nu0)
        # derivatives in y = exp(s): p and e are proportional to y
        dj1_dy = (p / y) * (nu - nu0) / (2.0 * math.sqrt(radicand))
        dj2_dy = -(e + 0.5 * p * (nu - nu0)) / y
        dy = -j2 / dj2_dy
        du = -j1 - dj1_dy * dy
        step = 1.0
        while y + step * dy <= 0.0:
            step *= 0.5
        y += step * dy
        u += step * du
    raise ShockSolveError(f"Newton for the locus point at nu = {nu} did not converge")


def _finish_point(up, nu, s, u):
    p = eos.pressure(up.params, eos.ThermoPoint(nu, s))
    sigma = math.sqrt(-(p - up.p0) / (nu - up.nu0))
    return ShockLocusPoint(nu=nu, u=u, p=p, s=s, sigma=sigma)


def locus_endpoint(up):
    """Velocity limit u_o of the locus as nu -> 0, with an error estimate.

    Uses two levels of Richardson extrapolation on nu = 1e-3, 1e-4, 1e-5.
    Returns (inf, nan) when the locus has a positive compression limit and u
    grows without bound.
    """
    if locus_lower_limit(up) > 0.0 or _energy_bracket(up, 0.0) >= 0.0:
        return math.inf, math.nan
    u3, u4, u5 = (downstream_closed_form(up, h).u for h in (1e-3, 1e-4, 1e-5))
    r1 = u4 + (u4 - u3) / 9.0
    r2 = u5 + (u5 - u4) / 9.0
    return r2 + (r2 - r1) / 99.0, abs(r2 - r1)


def admissible_window(up):
    """Open interval (u1, u_o) of background piston speeds with nu_iota < 1."""
    lim = locus_lower_limit(up)
    if lim >= 1.0:
        raise AdmissibilityError("the locus has no state with nu < 1 for this upstream gas")
    g = up.gamma
    es1 = -(up.p0 * _upstream_term(up, 1.0)) / (0.5 * _energy_bracket(up, 1.0))
    if es1 <= 0.0:
        raise AdmissibilityError("the locus has no state at nu = 1 for this upstream gas")
    p1 = (g + 1.0) * es1 - g * es1
    u1 = math.sqrt(-(p1 - up.p0) * (1.0 - up.nu0))
    uo, _ = locus_endpoint(up)
    return u1, uo


def solve_from_piston_speed(up, u_iota):
    """Background shock state driven by a piston moving at constant ``u_iota``."""
    u1, uo = admissible_window(up)
    if not (u1 < u_iota < uo):
        raise AdmissibilityError(
            f"piston speed {u_iota} outside the admissible window ({u1:.12g}, {uo:.12g})"
        )
    lo = max(1e-6, locus_lower_limit(up) * (1.0 + 1e-9) + 1e-12)
    hi = 1.0 - 1e-12

    def f(nu):
        return downstream_closed_form(up, nu).u - u_iota

    if f(lo) < 0.0:
        raise AdmissibilityError(f"piston speed {u_iota} is beyond the resolvable locus")
    nu_i = brentq(f, lo, hi, xtol=1e-16, rtol=4.0 * np.finfo(float).eps, maxiter=500)
    pt = downstream_closed_form(up, nu_i)
    return ShockLocusPoint(nu=nu_i, u=u_iota, p=pt.p, s=pt.s, sigma=pt.sigma)


def downstream_sound_speed(up, pt):
    return eos.sound_speed(up.params, eos.ThermoPoint(pt.nu, pt.s))


def lax_check(up, pt, margin=0.0):
    """True iff c0 < sigma < c(nu, s) with the given strictness margin."""
    return bool(up.c0 + margin < pt.sigma < downstream_sound_speed(up, pt) - margin)


def speed_ordering(up, pt):
    """True iff sigma > max(u, c0): the shock outruns both piston and sound.

    Since u = sigma (nu0 - nu) on the locus, sigma > u holds exactly when
    nu > nu0 - 1, so deep compressions fail the first inequality.
    """
    return bool(pt.sigma > max(pt.u, up.c0))


def _kmatrix(up, bg):
    g, nu0, p0 = up.gamma, up.nu0, up.p0
    es = math.exp(bg.s)
    lam = math.sqrt(g * es)
    chi0 = bg.sigma
    a = (g + 1.0) / g - bg.nu
    w = (g + 1.0 - g * nu0) * es - p0
    k11 = -lam / (4.0 * chi0) - chi0 / (4.0 * lam) - 0.5
    k12 = 0.5 * a * chi0
    k21 = -w / (4.0 * lam)
    k22 = 0.5 * a * w - p0 * ((g + 1.0) * nu0 - (g - 1.0) * bg.nu) / (2.0 * (g - 1.0))
    kt11 = -lam / (4.0 * chi0) - chi0 / (4.0 * lam) + 0.5
    return k11, k12, k21, k22, kt11


def boundary_maps(up, bg):
    """Closed-form slopes of the shock-boundary maps G1, G2 at zero."""
    if not bg.nu < 1.0:
        raise DomainError("background state must lie on the lower branch (nu < 1)")
    k11, k12, k21, k22, kt11 = _kmatrix(up, bg)
    det = k11 * k22 - k12 * k21
    if not det > 0.0:
        raise InvariantViolation(f"det(k) = {det} is not positive")
    h10 = -(kt11 * k22 - k12 * k21) / det
    h20 = k21 / det
    if not abs(h10) < 1.0:
        raise InvariantViolation(f"|h10| = {abs(h10)} is not below 1")
    return BoundaryMaps(h10=h10, h20=h20, kmat=((k11, k12), (k21, k22)), kt11=kt11, det_k=det)


class ShockBoundary:
    """Newton solver for (Phi1, Phi2) = (G1(Phi3), G2(Phi3)).

    The residuals are the jump relations composed with the inverse of the
    diagonalising transform.  Constants are cached because the simulator
    calls this at every stage.
    """

    def __init__(self, up, bg, radius=G_MAP_RADIUS, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
        self.up = up
        self.bg = bg
        self.radius = radius
        self.tol = tol
        self.max_iter = max_iter
        g = up.gamma
        self.lam_b = math.sqrt(g * math.exp(bg.s))
        self.a = (g + 1.0) / g - bg.nu

    def physical(self, phi1, phi2, phi3):
        nu = -(phi1 + phi3) / (2.0 * self.lam_b) + self.a * phi2 + self.bg.nu
        s = phi2 + self.bg.s
        u = 0.5 * (phi3 - phi1) + self.bg.u
        return nu, s, u

    def residual(self, phi1, phi2, phi3):
        return rh_residuals(self.up, *self.physical(phi1, phi2, phi3))

    def jacobian(self, phi1, phi2, phi3):
        """Rows K1, K2; columns d/dPhi1, d/dPhi2, d/dPhi3."""
        up = self.up
        g, nu0, p0 = up.gamma, up.nu0, up.p0
        nu, s, _ = self.physical(phi1, phi2, phi3)
        es = math.exp(s)
        p = (g + 1.0) * es - g * es * nu
        root = math.sqrt(-(p - p0) * (nu - nu0))
        r_nu = g * es * (nu - nu0) - (p - p0)
        r_s = -p * (nu - nu0)
        j1_nu = -r_nu / (2.0 * root)
        j1_s = -r_s / (2.0 * root)
        j2_nu = 0.5 * es * ((g + 1.0) - g * nu0) - 0.5 * p0
        j2_s = 0.5 * es * _energy_bracket(up, nu)
        dnu = -0.5 / self.lam_b
        return (
            (j1_nu * dnu - 0.5, j1_nu * self.a + j1_s, j1_nu * dnu + 0.5),
            (j2_nu * dnu, j2_nu * self.a + j2_s, j2_nu * dnu),
        )

    def solve(self, phi3, guess=(0.0, 0.0)):
        """Return (phi1, phi2) with both residuals below ``tol``."""
        if not abs(phi3) <= self.radius:
            raise ShockSolveError(f"|Phi3| = {abs(phi3)} exceeds the shock-map radius {self.radius}")
        x1, x2 = guess
        try:
            r1, r2 = self.residual(x1, x2, phi3)
        except DomainError as exc:
            raise ShockSolveError(str(exc)) from exc
        norm = max(abs(r1), abs(r2))
        for _ in range(self.max_iter):
            if norm < self.tol:
                return x1, x2
            (a11, a12, _), (a21, a22, _) = self.jacobian(x1, x2, phi3)
            det = a11 * a22 - a12 * a21
            d1 = -(a22 * r1 - a12 * r2) / det
            d2 = -(-a21 * r1 + a11 * r2) / det
            step = 1.0
            for _ in range(30):
                y1, y2 = x1 + step * d1, x2 + step * d2
                try:
                    q1, q2 = self.residual(y1, y2, phi3)
                except DomainError:
                    step *= 0.5
                    continue
                new = max(abs(q1), abs(q2))
                if new <= norm or step < 1e-8:
                    break
                step *= 0.5
            else:
                raise ShockSolveError("shock-map Newton line search failed")
            x1, x2, r1, r2, norm = y1, y2, q1, q2, new
        if norm < self.tol:
            return x1, x2
        raise ShockSolveError(f"shock-map Newton did not converge (residual {norm:.3e})")

    def slopes(self, phi1, phi2, phi3):
        """dG1/dPhi3 and dG2/dPhi3 at a solved point (implicit differentiation)."""
        (a11, a12, a13), (a21, a22, a23) = self.jacobian(phi1, phi2, phi3)
        det = a11 * a22 - a12 * a21
        return -(a22 * a13 - a12 * a23) / det, -(-a21 * a13 + a11 * a23) / det


def g_maps(up, bg, phi3, radius=G_MAP_RADIUS):
    """(G1(phi3), G2(phi3)) by Newton from the background."""
    return ShockBoundary(up, bg, radius=radius).solve(phi3)
