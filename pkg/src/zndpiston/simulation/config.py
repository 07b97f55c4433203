"""Scenario configuration: upstream gas, piston motion, reaction, grid."""

import hashlib
import json
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .. import hugoniot
from ..errors import AdmissibilityError, ConfigurationError

PISTON_KINDS = ("constant", "ramp", "raised_cosine", "kinked_ramp")
IGNITION_KINDS = ("step", "arrhenius")


@dataclass(frozen=True)
class PistonProfile:
    """Shape g(t) of the piston perturbation, B'(t) = b0 + epsilon * g(t).

    Every shipped shape has g(0) = 0 and max(|g|, |g'|) <= 1 under the
    parameter bounds enforced here.  ``kinked_ramp`` is continuous with a
    jump in g' at t = tau; it exists to probe non-smooth piston data.
    """

    kind: str = "constant"
    tau: float = 1.0
    period: float = 4.0

    def __post_init__(self):
        if self.kind not in PISTON_KINDS:
            raise ConfigurationError(
                f"unknown profile {self.kind!r}; expected one of {PISTON_KINDS}", field="piston.kind"
            )
        if self.kind in ("ramp", "kinked_ramp") and not self.tau >= 1.0:
            raise ConfigurationError("tau >= 1 keeps |g'| <= 1", field="piston.tau")
        if self.kind == "raised_cosine" and not self.period >= math.pi:
            raise ConfigurationError("period >= pi keeps |g'| <= 1", field="piston.period")

    def g(self, t):
        if self.kind == "ramp":
            return math.tanh(t / self.tau)
        if self.kind == "raised_cosine":
            if t >= self.period:
                return 0.0
            return 0.5 * (1.0 - math.cos(2.0 * math.pi * t / self.period))
        if self.kind == "kinked_ramp":
            return min(t / self.tau, 1.0)
        return 0.0

    def dg(self, t):
        if self.kind == "ramp":
            return 1.0 / (self.tau * math.cosh(t / self.tau) ** 2)
        if self.kind == "raised_cosine":
            if t >= self.period:
                return 0.0
            return math.pi / self.period * math.sin(2.0 * math.pi * t / self.period)
        if self.kind == "kinked_ramp":
            return 1.0 / self.tau if t < self.tau else 0.0
        return 0.0


@dataclass(frozen=True)
class IgnitionModel:
    kind: str = "step"
    ell: float = 0.0
    A: float = 1.0

    def __post_init__(self):
        if self.kind not in IGNITION_KINDS:
            raise ConfigurationError(
                f"unknown ignition model {self.kind!r}; expected one of {IGNITION_KINDS}",
                field="ignition.model",
            )
        if self.kind == "arrhenius" and not self.A > 0.0:
            raise ConfigurationError("activation constant must be positive", field="ignition.A")

    def psi(self, T, T_i):
        """Reaction switch; vectorised over T."""
        T = np.asarray(T, dtype=float)
        hot = T > T_i
        if self.kind == "step":
            return hot.astype(float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            val = T**self.ell * np.exp(-self.A / (T - T_i))
        return np.where(hot, val, 0.0)


@dataclass(frozen=True)
class ScenarioConfig:
    gamma: float
    nu0: float
    p0: float
    u_iota: float
    kappa: float = 1.0
    hbar: float = 0.0
    T_i: float = 1.0
    epsilon: float = 0.0
    piston: PistonProfile = field(default_factory=PistonProfile)
    n_cells: int = 200
    cfl: float = 0.8
    t_end: float = 4.0
    ignition: IgnitionModel = field(default_factory=IgnitionModel)
    order: int = 1
    snapshot_dt: float = 0.0
    seed_time: float = 1e-3
    interpolation: str = "pchip"
    shock_map_radius: float = hugoniot.G_MAP_RADIUS
    z_probes: int = 16
    dt_min: float = 1e-14

    def __post_init__(self):
        self._validate()

    def _validate(self):
        up = hugoniot.UpstreamState(self.gamma, self.nu0, self.p0)
        try:
            u1, uo = hugoniot.admissible_window(up)
        except AdmissibilityError as exc:
            raise ConfigurationError(str(exc), field="nu0") from exc
        if not (u1 < self.u_iota < uo):
            raise ConfigurationError(
                f"u_iota = {self.u_iota} outside the admissible window "
                f"u1 < u_iota < u_o = ({u1:.10g}, {uo:.10g}) that keeps nu_iota < 1",
                field="u_iota",
            )
        if not self.kappa > 0.0:
            raise ConfigurationError("reaction rate must satisfy kappa > 0", field="kappa")
        if not self.hbar >= 0.0:
            raise ConfigurationError("binding energy must satisfy hbar >= 0", field="hbar")
        if not self.T_i > 0.0:
            raise ConfigurationError("ignition temperature must be positive", field="T_i")
        if not self.epsilon >= 0.0:
            raise ConfigurationError("perturbation amplitude must be >= 0", field="epsilon")
        if not (isinstance(self.n_cells, (int, np.integer)) and self.n_cells >= 4):
            raise ConfigurationError("need an integer number of cells >= 4", field="n_cells")
        if not self.cfl > 0.0:
            raise ConfigurationError("Courant number must be positive", field="cfl")
        if not self.t_end > self.seed_time:
            raise ConfigurationError(f"horizon must exceed seed_time = {self.seed_time}", field="t_end")
        if self.order not in (1, 2):
            raise ConfigurationError("spatial order must be 1 or 2", field="order")
        if not self.snapshot_dt >= 0.0:
            raise ConfigurationError("snapshot interval must be >= 0", field="snapshot_dt")
        if not self.seed_time > 0.0:
            raise ConfigurationError("seed time must be positive", field="seed_time")
        if self.interpolation not in ("pchip", "linear"):
            raise ConfigurationError("interpolation must be 'pchip' or 'linear'", field="interpolation")
        if not self.shock_map_radius > 0.0:
            raise ConfigurationError("shock-map radius must be positive", field="shock_map_radius")
        if not (isinstance(self.z_probes, (int, np.integer)) and self.z_probes >= 0):
            raise ConfigurationError("z_probes must be a non-negative integer", field="z_probes")

    @property
    def upstream(self):
        return hugoniot.UpstreamState(self.gamma, self.nu0, self.p0)

    @property
    def output_interval(self):
        return self.snapshot_dt if self.snapshot_dt > 0.0 else self.t_end / 40.0

    def piston_velocity(self, t):
        return self.u_iota + self.epsilon * self.piston.g(t)

    def piston_acceleration(self, t):
        return self.epsilon * self.piston.dg(t)

    def ignition_on_background(self, bg):
        """Whether the reaction switch is on at the background temperature."""
        from .. import eos

        T = eos.temperature(eos.EosParams(self.gamma), eos.ThermoPoint(bg.nu, bg.s))
        return bool(self.ignition.psi(T, self.T_i) > 0.0)

    def with_overrides(self, **changes):
        return replace(self, **{k: v for k, v in changes.items() if v is not None})

    def to_dict(self):
        d = asdict(self)
        d["piston"] = asdict(self.piston)
        d["ignition"] = asdict(self.ignition)
        return d

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        if isinstance(data.get("piston"), dict):
            data["piston"] = PistonProfile(**data["piston"])
        if isinstance(data.get("ignition"), dict):
            data["ignition"] = IgnitionModel(**data["ignition"])
        return cls(**data)

    def config_hash(self):
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()
