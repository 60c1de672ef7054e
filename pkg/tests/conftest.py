"""
Shared fixtures: solid parahydrogen, the long-probe grid and prepared states.
"""
import math

import pytest

from raman_beat.analytic import BeatParameters
from raman_beat.core import Frequency, TimeGrid, convert_frequency, gaussian_pulse
from raman_beat.medium import prepared_coherence, solid_hydrogen

THETA = -0.4


@pytest.fixture
def hydrogen():
    return solid_hydrogen()


@pytest.fixture
def omega_m(hydrogen):
    return hydrogen.omega_m


@pytest.fixture
def period(omega_m):
    return 2.0 * math.pi / omega_m


@pytest.fixture
def prepared(hydrogen):
    """(PreparedCoherence, TwoLevelState) at θ = −0.4 with κ filled in."""
    return prepared_coherence(THETA, 0.0, hydrogen)


@pytest.fixture
def prepared_state(prepared):
    return prepared[1]


@pytest.fixture
def fig2_grid(period):
    """80 modulation periods on 2^14 points."""
    return TimeGrid.commensurate(2**14, period, 80)


@pytest.fixture
def fig2_params(omega_m):
    """Unit-length beat parameters at αz = 0.6 with η = τ."""
    return BeatParameters(alpha=0.6, omega_m=omega_m, z=1.0)


@pytest.fixture
def fig2_probe(fig2_grid, omega_m, period):
    """T = 10 T_m Gaussian at ω₀ = 5.2 ω_m centred on η = 0."""
    return gaussian_pulse(fig2_grid, Frequency(5.2 * omega_m), 10.0 * period)


@pytest.fixture
def carrier_800nm():
    return convert_frequency(800.0, "nm")
