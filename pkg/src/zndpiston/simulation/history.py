"""Shock trajectory record and the burnt-fraction field it determines."""

import numpy as np

from ..errors import DomainError


class ShockHistory:
    """Samples (t, chi, chi') of the tracked shock, strictly increasing in t and chi.

    Both chi(t) and its inverse are evaluated by cubic Hermite interpolation
    using the recorded shock speeds as knot slopes, with Fritsch-Carlson
    limiting so that the inverse stays monotone.
    """

    def __init__(self, capacity=1024):
        self._t = np.empty(capacity)
        self._chi = np.empty(capacity)
        self._chip = np.empty(capacity)
        self._n = 0

    def __len__(self):
        return self._n

    def append(self, t, chi, chip):
        n = self._n
        if n and not (t > self._t[n - 1] and chi > self._chi[n - 1]):
            raise ValueError(
                f"history must increase: ({t}, {chi}) after ({self._t[n - 1]}, {self._chi[n - 1]})"
            )
        if not chip > 0.0:
            raise ValueError(f"shock speed must be positive, got {chip}")
        if n == self._t.size:
            for name in ("_t", "_chi", "_chip"):
                old = getattr(self, name)
                new = np.empty(2 * old.size)
                new[:n] = old
                setattr(self, name, new)
        self._t[n], self._chi[n], self._chip[n] = t, chi, chip
        self._n = n + 1

    @property
    def t(self):
        return self._t[: self._n]

    @property
    def chi(self):
        return self._chi[: self._n]

    @property
    def chi_prime(self):
        return self._chip[: self._n]

    @classmethod
    def from_arrays(cls, t, chi, chip):
        h = cls(capacity=max(len(t), 2))
        for row in zip(t, chi, chip):
            h.append(*map(float, row))
        return h

    def position(self, t):
        """chi(t) for 0 <= t <= last recorded time."""
        t = np.asarray(t, dtype=float)
        if np.any(t < self.t[0]) or np.any(t > self.t[-1]):
            raise DomainError("time outside the recorded shock history")
        return _hermite(self.t, self.chi, self.chi_prime, t, limit=False)

    def inverse(self, x, method="pchip", extrapolate=False):
        """chi^{-1}(x): the time at which the shock passed Lagrangian position x.

        With ``extrapolate`` the last sample is extended linearly, which the
        integrator uses inside a step before the new sample is recorded.
        """
        x = np.asarray(x, dtype=float)
        chi, t = self.chi, self.t
        if not extrapolate and (np.any(x < chi[0]) or np.any(x > chi[-1])):
            raise DomainError("position outside the recorded shock history")
        if method == "linear":
            out = np.interp(x, chi, t)
        else:
            out = _hermite(chi, t, 1.0 / self.chi_prime, np.minimum(x, chi[-1]), limit=True)
        if extrapolate:
            beyond = x > chi[-1]
            if np.any(beyond):
                out = np.where(beyond, t[-1] + (x - chi[-1]) / self.chi_prime[-1], out)
        return out


def _hermite(xk, yk, mk, x, limit):
    n = xk.size
    k = np.clip(np.searchsorted(xk, x, side="right") - 1, 0, n - 2)
    h = xk[k + 1] - xk[k]
    tau = (x - xk[k]) / h
    m0 = mk[k]
    m1 = mk[k + 1]
    if limit:
        delta = (yk[k + 1] - yk[k]) / h
        with np.errstate(divide="ignore", invalid="ignore"):
            r0 = m0 / delta
            r1 = m1 / delta
        rr = r0 * r0 + r1 * r1
        fix = rr > 9.0
        if np.any(fix):
            sc = np.where(fix, 3.0 / np.sqrt(np.where(fix, rr, 1.0)), 1.0)
            m0 = m0 * sc
            m1 = m1 * sc
    tau2 = tau * tau
    tau3 = tau2 * tau
    h00 = 2.0 * tau3 - 3.0 * tau2 + 1.0
    h10 = tau3 - 2.0 * tau2 + tau
    h01 = -2.0 * tau3 + 3.0 * tau2
    h11 = tau3 - tau2
    out = h00 * yk[k] + h10 * h * m0 + h01 * yk[k + 1] + h11 * h * m1
    if np.ndim(out) == 0:
        return float(out)
    return out


def z_field(history, kappa, t, x, method="pchip"):
    """Unburnt fraction exp(-kappa (t - chi^{-1}(x))) behind the shock.

    Requires 0 <= x <= chi(t).  At the shock itself the value is exactly 1.
    """
    x = np.asarray(x, dtype=float)
    front = history.position(t)
    tol = 1e-13 * max(1.0, front)
    if np.any(x < -tol) or np.any(x > front + tol):
        raise DomainError(f"position outside [0, chi(t)] = [0, {front}]")
    at_front = x >= front
    born = history.inverse(np.clip(x, 0.0, front), method=method)
    born = np.where(at_front, t, born)
    z = np.exp(-kappa * (t - born))
    if np.ndim(z) == 0:
        return float(z)
    return z
