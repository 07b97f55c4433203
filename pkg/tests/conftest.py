import pytest

from zndpiston import hugoniot
from zndpiston.simulation import PistonProfile, ScenarioConfig

BASE = dict(gamma=1.4, nu0=1.8, p0=1.0, u_iota=1.2, kappa=1.0, hbar=1e-6, T_i=1.0,
            piston=PistonProfile("ramp"))


@pytest.fixture(scope="session")
def up():
    return hugoniot.UpstreamState(1.4, 1.8, 1.0)


@pytest.fixture(scope="session")
def bg(up):
    return hugoniot.solve_from_piston_speed(up, 1.2)


@pytest.fixture
def make_cfg():
    def make(**kw):
        return ScenarioConfig(**{**BASE, **kw})

    return make
