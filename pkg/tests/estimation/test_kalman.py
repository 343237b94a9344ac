import numpy as np
import pytest

from specsense.core.exceptions import DimensionMismatchError
from specsense.dynamics.system import simulate_trajectory
from specsense.estimation.bound import average_bound
from specsense.estimation.covariance import correct_cov
from specsense.estimation.kalman import initial_filter_state, kf_step


def test_initial_state(reference_system):
    state = initial_filter_state(reference_system)
    np.testing.assert_array_equal(state.P.entries, reference_system.Q)
    np.testing.assert_array_equal(state.x_hat, np.zeros(2))
    assert state.k == 1


def test_lost_measurement_predicts(reference_system):
    state = initial_filter_state(reference_system, [1.0, -1.0])
    following = kf_step(state, reference_system)
    np.testing.assert_allclose(following.x_hat, reference_system.A @ np.array([1.0, -1.0]))
    np.testing.assert_allclose(following.P.entries, correct_cov(reference_system.Q, reference_system, False))
    assert following.k == 2


def test_received_measurement_corrects(reference_system):
    state = initial_filter_state(reference_system)
    following = kf_step(state, reference_system, [0.5, 0.5])
    np.testing.assert_allclose(following.P.entries, correct_cov(reference_system.Q, reference_system, True))
    # gain Q (Q + R)^-1 = I / 1.8 on the reference plant
    np.testing.assert_allclose(following.x_filtered, np.array([0.5, 0.5]) / 1.8)


def test_measurement_shape_is_checked(reference_system):
    with pytest.raises(DimensionMismatchError):
        kf_step(initial_filter_state(reference_system), reference_system, [1.0, 2.0, 3.0])


def test_filter_tracks_simulated_plant(reference_system, rng):
    steps = 5000
    states, measurements = simulate_trajectory(reference_system, np.zeros(2), steps, rng)
    # x_0 = 0 is known, so the initial prediction targets states[0]
    state = initial_filter_state(reference_system, np.zeros(2))
    squared_errors = []
    for k in range(steps):
        squared_errors.append(float(np.sum((states[k] - state.x_hat) ** 2)))
        state = kf_step(state, reference_system, measurements[k])
    stationary = average_bound(reference_system, 1.0, 1)
    np.testing.assert_allclose(state.P.entries, stationary.entries, atol=1e-8)
    assert np.mean(squared_errors[100:]) == pytest.approx(stationary.trace, rel=0.2)
