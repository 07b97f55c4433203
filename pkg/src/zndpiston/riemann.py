"""
Diagonalising coordinates for the reduced Lagrangian system.

The physical perturbation (nu - nu_i, s - s_i, u - u_i) is mapped by the
constant matrix L to Phi = (Phi1, Phi2, Phi3).  Phi1 travels with the
left-going sound speed, Phi3 with the right-going one, and Phi2 is the
entropy perturbation, which does not move in Lagrangian coordinates.  The
coupling coefficients b2, b3 are the off-diagonal entries of the left
eigenvectors of the transformed coefficient matrix; both vanish at Phi = 0.

Functions are vectorised over numpy arrays.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, InvariantViolation

BETA_MAX = 1e6


@dataclass(frozen=True)
class ReferenceState:
    gamma: float
    nu_i: float
    s_i: float
    u_i: float

    def __post_init__(self):
        if not self.nu_i < 1.0:
            raise DomainError(f"reference state must have nu_i < 1, got {self.nu_i}")

    @classmethod
    def from_locus(cls, gamma, bg):
        return cls(gamma=gamma, nu_i=bg.nu, s_i=bg.s, u_i=bg.u)

    @property
    def lambda_b(self):
        return math.sqrt(self.gamma * math.exp(self.s_i))

    @property
    def volume_shift(self):
        """(gamma+1)/gamma - nu_i, the entropy column weight in L."""
        return (self.gamma + 1.0) / self.gamma - self.nu_i


class Perturbation(NamedTuple):
    nu: object
    s: object
    u: object


class DiagonalState(NamedTuple):
    phi1: object
    phi2: object
    phi3: object


@dataclass(frozen=True)
class ScalingParams:
    alpha: float
    beta: float
    beta_capped: bool = False


def l_matrix(ref):
    lam, a = ref.lambda_b, ref.volume_shift
    return np.array(
        [
            [-lam, lam * a, -1.0],
            [0.0, 1.0, 0.0],
            [-lam, lam * a, 1.0],
        ]
    )


def coefficient_matrix(ref, nu, s):
    """Coefficient matrix of the (nu, s, u) system: rows nu_t, s_t, u_t.

    The u-equation has no u_x term; the (3, 3) entry is zero.
    """
    g = ref.gamma
    es = math.exp(s)
    return np.array(
        [
            [0.0, 0.0, -1.0],
            [0.0, 0.0, 0.0],
            [-g * es, (g + 1.0) * es - g * es * nu, 0.0],
        ]
    )


def to_diagonal(ref, pert):
    lam, a = ref.lambda_b, ref.volume_shift
    nu, s, u = (np.asarray(v, dtype=float) for v in pert)
    base = -lam * nu + lam * a * s
    return DiagonalState(_o(base - u), _o(s + 0.0), _o(base + u))


def from_diagonal(ref, phi):
    """Physical state (not perturbation) for diagonal coordinates ``phi``."""
    lam, a = ref.lambda_b, ref.volume_shift
    p1, p2, p3 = (np.asarray(v, dtype=float) for v in phi)
    nu = -(p1 + p3) / (2.0 * lam) + a * p2 + ref.nu_i
    s = p2 + ref.s_i
    u = 0.5 * (p3 - p1) + ref.u_i
    return Perturbation(_o(nu), _o(s), _o(u))


def eigenvalues(ref, phi2):
    c = np.sqrt(ref.gamma * np.exp(np.asarray(phi2, dtype=float) + ref.s_i))
    return _o(-c), _o(np.zeros_like(c)), _o(c)


def coupling_coeffs(ref, phi):
    """(b2, b3) of the left eigenvectors (1, b2, b3) and (b3, b2, 1)."""
    g = ref.gamma
    p1, p2, p3 = (np.asarray(v, dtype=float) for v in phi)
    es_i = math.exp(ref.s_i)
    lam_b = ref.lambda_b
    es = np.exp(p2 + ref.s_i)
    c = np.sqrt(g * es)
    b2 = (c * (p1 + p3) - 2.0 * math.sqrt(es_i) * np.sqrt(es) * ((g + 1.0) - g * ref.nu_i) * p2) / (
        c + lam_b
    )
    b3 = (c - lam_b) / (c + lam_b)
    return _o(b2), _o(b3)


def scale(params, phi):
    p1, p2, p3 = phi
    return DiagonalState(p1 / params.alpha, params.beta * p2, p3)


def unscale(params, phi_hat):
    p1, p2, p3 = phi_hat
    return DiagonalState(params.alpha * p1, p2 / params.beta, p3)


def choose_scaling(maps, beta_max=BETA_MAX):
    """Midpoint choice of (alpha, beta) inside |h10| < alpha < 1, 0 < beta < 1/|h20|."""
    h1, h2 = abs(maps.h10), abs(maps.h20)
    if not h1 < 1.0:
        raise InvariantViolation(f"|h10| = {h1} leaves no room for alpha < 1")
    alpha = 0.5 * (h1 + 1.0)
    if h2 == 0.0 or 0.5 / h2 > beta_max:
        return ScalingParams(alpha=alpha, beta=beta_max, beta_capped=True)
    return ScalingParams(alpha=alpha, beta=0.5 / h2)


def transformed_matrix(ref, phi):
    """L Lambda(Phi) L^-1 evaluated at the physical state behind ``phi``."""
    nu, s, _ = from_diagonal(ref, phi)
    lm = l_matrix(ref)
    return lm @ coefficient_matrix(ref, float(nu), float(s)) @ np.linalg.inv(lm)


def _o(value):
    if np.ndim(value) == 0:
        return float(value)
    return value
