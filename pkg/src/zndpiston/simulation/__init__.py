"""Front-tracking simulation of the perturbed piston problem."""

from .config import IgnitionModel, PistonProfile, ScenarioConfig
from .history import ShockHistory, z_field
from .solver import (
    FieldSnapshot,
    GasState,
    Simulation,
    TimeSeries,
    build_background,
    init_scenario,
    reconstruct_physical,
    run,
)

__all__ = [
    "FieldSnapshot",
    "GasState",
    "IgnitionModel",
    "PistonProfile",
    "ScenarioConfig",
    "ShockHistory",
    "Simulation",
    "TimeSeries",
    "build_background",
    "init_scenario",
    "reconstruct_physical",
    "run",
    "z_field",
]
