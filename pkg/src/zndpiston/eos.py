"""
Piecewise equation of state.

Above unit specific volume the gas is a polytropic gas; below it the internal
energy is quadratic in the specific volume, so that the pressure is linear in
``nu`` and the Lagrangian sound speed depends on the entropy only.  Both
branches and their first derivatives meet continuously at ``nu = 1``.

Entropy ``s`` and specific volume ``nu`` are the fundamental pair.  Pressure
and temperature are always derived, with temperature equal to the internal
energy.  All functions accept scalars or numpy arrays.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, DomainError


@dataclass(frozen=True)
class EosParams:
    gamma: float

    def __post_init__(self):
        if not np.isfinite(self.gamma) or self.gamma <= 1.0:
            raise ConfigurationError(
                f"adiabatic exponent must satisfy gamma > 1, got {self.gamma}",
                field="gamma",
            )


@dataclass(frozen=True)
class ThermoPoint:
    nu: object
    s: object

    def __post_init__(self):
        _check_volume(self.nu)


def _check_volume(nu):
    nu = np.asarray(nu, dtype=float)
    if not np.all(nu > 0.0):
        raise DomainError(f"specific volume must be positive, got {nu}")


def _out(value):
    # scalar in, float out
    if np.ndim(value) == 0:
        return float(value)
    return value


def internal_energy(params, pt):
    """
    Specific internal energy e(nu, s).

    Parameters
    ----------
    params : EosParams
    pt : ThermoPoint

    Returns
    -------
    float or ndarray
    """
    g = params.gamma
    nu = np.asarray(pt.nu, dtype=float)
    es = np.exp(np.asarray(pt.s, dtype=float))
    upper = es * nu ** (1.0 - g) / (g - 1.0)
    lower = 0.5 * g * es * nu**2 - (g + 1.0) * es * nu + (g * g + g) * es / (2.0 * (g - 1.0))
    return _out(np.where(nu >= 1.0, upper, lower))


def temperature(params, pt):
    """Temperature; identical to the internal energy for this gas."""
    return internal_energy(params, pt)


def pressure(params, pt):
    g = params.gamma
    nu = np.asarray(pt.nu, dtype=float)
    es = np.exp(np.asarray(pt.s, dtype=float))
    upper = es * nu ** (-g)
    lower = (g + 1.0) * es - g * es * nu
    return _out(np.where(nu >= 1.0, upper, lower))


def dp_dnu(params, pt):
    """Partial derivative of pressure in specific volume at fixed entropy."""
    g = params.gamma
    nu = np.asarray(pt.nu, dtype=float)
    es = np.exp(np.asarray(pt.s, dtype=float))
    upper = -g * es * nu ** (-g - 1.0)
    lower = -g * es * np.ones_like(nu)
    return _out(np.where(nu >= 1.0, upper, lower))


def sound_speed(params, pt):
    """Lagrangian sound speed sqrt(-p_nu)."""
    return _out(np.sqrt(-np.asarray(dp_dnu(params, pt))))


def entropy_from_pressure(params, nu, p):
    """
    Invert the pressure law for the entropy on the branch selected by ``nu``.

    Raises DomainError when (nu, p) is inconsistent with a positive
    exponential, e.g. nu >= (gamma+1)/gamma on the lower branch.
    """
    g = params.gamma
    _check_volume(nu)
    nu = np.asarray(nu, dtype=float)
    p = np.asarray(p, dtype=float)
    denom = np.where(nu >= 1.0, nu ** (-g), g + 1.0 - g * nu)
    arg = p / denom
    if not np.all((arg > 0.0) & (denom > 0.0)):
        raise DomainError(f"no entropy reproduces p={p} at nu={nu}")
    return _out(np.log(arg))
