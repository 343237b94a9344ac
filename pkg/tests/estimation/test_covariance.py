import numpy as np
import pytest

from specsense.core.exceptions import DimensionMismatchError
from specsense.dynamics.models import LinearSystem
from specsense.estimation.covariance import (
    bound_step,
    correct_cov,
    gain_update,
    information_update,
    predict_cov,
    sensing_period_cov,
)

PRIOR = np.array([[2.0, 0.5], [0.5, 1.0]])


def test_update_forms_agree(reference_system):
    np.testing.assert_allclose(information_update(PRIOR, reference_system), gain_update(PRIOR, reference_system))


def test_singular_prior_uses_gain_form(reference_system):
    # nothing to correct from a perfectly known state
    np.testing.assert_allclose(correct_cov(np.zeros((2, 2)), reference_system, True), reference_system.Q)


def test_lost_packet_is_a_prediction(reference_system):
    expected = reference_system.A @ PRIOR @ reference_system.A.T + reference_system.Q
    np.testing.assert_allclose(correct_cov(PRIOR, reference_system, False), expected)
    np.testing.assert_allclose(predict_cov(PRIOR, reference_system), expected)


def test_bound_step_interpolates_between_extremes(reference_system):
    np.testing.assert_allclose(bound_step(PRIOR, reference_system, True, 1.0), gain_update(PRIOR, reference_system))
    np.testing.assert_allclose(bound_step(PRIOR, reference_system, True, 0.0), predict_cov(PRIOR, reference_system))
    np.testing.assert_allclose(bound_step(PRIOR, reference_system, False, 0.7), predict_cov(PRIOR, reference_system))
    half = bound_step(PRIOR, reference_system, True, 0.5)
    np.testing.assert_allclose(
        half, 0.5 * (gain_update(PRIOR, reference_system) + predict_cov(PRIOR, reference_system))
    )
    with pytest.raises(ValueError):
        bound_step(PRIOR, reference_system, True, 1.5)


@pytest.mark.parametrize('n', [1, 2, 5])
@pytest.mark.parametrize('received', [True, False])
def test_period_closed_form_matches_single_steps(reference_system, n, received):
    P = PRIOR
    for _ in range(n - 1):
        P = predict_cov(P, reference_system)
    P = correct_cov(P, reference_system, received)
    np.testing.assert_allclose(sensing_period_cov(PRIOR, reference_system, n, received), P, rtol=1e-10)


def test_shape_mismatch_is_rejected(reference_system):
    with pytest.raises(DimensionMismatchError):
        predict_cov(np.eye(3), reference_system)


def _random_pd(rng: np.random.Generator, size: int) -> np.ndarray:
    factor = rng.standard_normal((size, size))
    return factor @ factor.T + 0.1 * np.eye(size)


def test_update_forms_agree_on_random_systems(rng):
    for _ in range(100):
        q1 = int(rng.integers(1, 5))
        q2 = int(rng.integers(1, q1 + 1))
        sys = LinearSystem(
            A=rng.standard_normal((q1, q1)),
            C=rng.standard_normal((q2, q1)),
            Q=_random_pd(rng, q1),
            R=_random_pd(rng, q2),
        )
        prior = _random_pd(rng, q1)
        expected = gain_update(prior, sys)
        scale = float(np.abs(expected).max())
        np.testing.assert_allclose(information_update(prior, sys), expected, rtol=1e-9, atol=1e-9 * scale)
