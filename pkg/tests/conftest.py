import numpy as np
import pytest

from specsense.channel.models import ChannelModel
from specsense.core.constants import (
    DEFAULT_A,
    DEFAULT_ALPHA,
    DEFAULT_BANDWIDTH,
    DEFAULT_BETA,
    DEFAULT_C,
    DEFAULT_E_S,
    DEFAULT_E_TX,
    DEFAULT_EPS_D,
    DEFAULT_Q,
    DEFAULT_R,
    DEFAULT_REFERENCE_GAMMA,
    DEFAULT_REFERENCE_PERIOD,
    DEFAULT_SNR_DB,
    DEFAULT_T_X,
    DEFAULT_TAU_MAX,
)
from specsense.dynamics.models import LinearSystem
from specsense.estimation.bound import average_bound
from specsense.optimizer.models import ProblemSpec
from specsense.sensing.detection import false_alarm_threshold
from specsense.sensing.models import EnergyParams, SensingConfig
from tests.constants import TEST_SEED


@pytest.fixture(scope='session')
def reference_system() -> LinearSystem:
    return LinearSystem(A=DEFAULT_A, C=DEFAULT_C, Q=DEFAULT_Q, R=DEFAULT_R)


@pytest.fixture(scope='session')
def scalar_system() -> LinearSystem:
    return LinearSystem(A=1.0, C=1.0, Q=1.0, R=1.0)


@pytest.fixture(scope='session')
def reference_channel() -> ChannelModel:
    return ChannelModel(alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA)


@pytest.fixture(scope='session')
def reference_sensing() -> SensingConfig:
    return SensingConfig(
        tau_max=DEFAULT_TAU_MAX,
        bandwidth=DEFAULT_BANDWIDTH,
        eps_d=DEFAULT_EPS_D,
        eps_f=false_alarm_threshold(DEFAULT_EPS_D, DEFAULT_SNR_DB),
        t_x=DEFAULT_T_X,
    )


@pytest.fixture(scope='session')
def reference_energy() -> EnergyParams:
    return EnergyParams(e_s=DEFAULT_E_S, e_tx=DEFAULT_E_TX)


@pytest.fixture(scope='session')
def reference_problem(reference_system, reference_channel, reference_sensing, reference_energy) -> ProblemSpec:
    # target is the averaged bound at gamma = 0.7, n = 6
    return ProblemSpec(
        sys=reference_system,
        ch=reference_channel,
        sense=reference_sensing,
        ep=reference_energy,
        P_bar=average_bound(reference_system, DEFAULT_REFERENCE_GAMMA, DEFAULT_REFERENCE_PERIOD),
    )


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(TEST_SEED)
