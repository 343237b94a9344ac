import numpy as np
import scipy.linalg

from specsense.core.exceptions import DimensionMismatchError
from specsense.dynamics.models import LinearSystem
from specsense.estimation.constants import INFORMATION_FORM_MAX_COND
from specsense.utils.linalg import singular_values, symmetrize


def _check_square(P: np.ndarray, sys: LinearSystem) -> None:
    """Raises unless P is q1 x q1."""
    if P.shape != (sys.q1, sys.q1):
        raise DimensionMismatchError(f"Covariance has shape {P.shape}, plant expects ({sys.q1}, {sys.q1}).")


def predict_cov(P: np.ndarray, sys: LinearSystem) -> np.ndarray:
    """
    Open-loop covariance propagation.
    :param P: Covariance of the previous step.
    :param sys: Plant.
    :return: A P A^T + Q.
    """
    _check_square(P, sys)
    return symmetrize(sys.A @ P @ sys.A.T + sys.Q)


def gain_update(P: np.ndarray, sys: LinearSystem) -> np.ndarray:
    """Received-measurement update in gain form: A P A^T + Q - A P C^T (C P C^T + R)^-1 C P A^T."""
    _check_square(P, sys)
    innovation = sys.C @ P @ sys.C.T + sys.R
    cross = sys.C @ P @ sys.A.T
    return symmetrize(sys.A @ P @ sys.A.T + sys.Q - cross.T @ np.linalg.solve(innovation, cross))


def information_update(P: np.ndarray, sys: LinearSystem) -> np.ndarray:
    """Received-measurement update in information form: A (P^-1 + C^T R^-1 C)^-1 A^T + Q; P must be invertible."""
    _check_square(P, sys)
    information = scipy.linalg.inv(P) + sys.C.T @ scipy.linalg.solve(sys.R, sys.C)
    upsilon = scipy.linalg.inv(information)
    return symmetrize(sys.A @ upsilon @ sys.A.T + sys.Q)


def correct_cov(P: np.ndarray, sys: LinearSystem, received: bool) -> np.ndarray:
    """
    One step of the random Riccati recursion: next prediction covariance given whether the measurement arrived.
    :param P: Prediction covariance of the current step.
    :param sys: Plant.
    :param received: Whether the measurement packet was received.
    :return: Prediction covariance of the next step.
    """
    if not received:
        return predict_cov(P, sys)
    sigma = singular_values(P)
    if sigma[-1] * INFORMATION_FORM_MAX_COND > sigma[0]:
        return information_update(P, sys)
    # singular or nearly singular prior
    return gain_update(P, sys)


def bound_step(Y: np.ndarray, sys: LinearSystem, sensing_step: bool, gamma: float) -> np.ndarray:
    """
    Deterministic bound recursion on the expected covariance:
    Y' = A Y A^T + Q - 1{sensing} gamma A Y C^T (C Y C^T + R)^-1 C Y A^T.
    :param Y: Current bound.
    :param sys: Plant.
    :param sensing_step: Whether the channel is sensed (and possibly used) in this step.
    :param gamma: Reception rate of a sensing step.
    :return: Next bound.
    """
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"Reception rate must lie in [0, 1], got {gamma}.")
    if not sensing_step or gamma == 0.0:
        return predict_cov(Y, sys)
    _check_square(Y, sys)
    innovation = sys.C @ Y @ sys.C.T + sys.R
    cross = sys.C @ Y @ sys.A.T
    return symmetrize(sys.A @ Y @ sys.A.T + sys.Q - gamma * cross.T @ np.linalg.solve(innovation, cross))


def sensing_period_cov(P: np.ndarray, sys: LinearSystem, n: int, received: bool) -> np.ndarray:
    """
    Closed form of one sensing period: from the covariance at a sensing instant to the covariance at the next one,
    n - 1 blind predictions followed by one sensing step.

        P' = (1 - g) A^n P (A^T)^n + (1 - g) sum_{t=1}^{n-1} A^t Q (A^T)^t + Q + g A Upsilon A^T,

    where g is the reception indicator and Upsilon = (P_-^-1 + C^T R^-1 C)^-1 for the covariance P_- right before
    the sensing step.
    :return: Covariance at the next sensing instant.
    """
    if n < 1:
        raise ValueError(f"Sensing period must be a positive integer, got {n}.")
    _check_square(P, sys)
    powers = [np.eye(sys.q1)]
    for _ in range(n):
        powers.append(sys.A @ powers[-1])
    ladder = [powers[t] @ sys.Q @ powers[t].T for t in range(n)]
    before_sensing = powers[n - 1] @ P @ powers[n - 1].T + sum(ladder[: n - 1], np.zeros_like(P))
    g = 1.0 if received else 0.0
    blind = powers[n] @ P @ powers[n].T + sum(ladder[1:], np.zeros_like(P))
    corrected = np.zeros_like(P)
    if received:
        upsilon = scipy.linalg.inv(scipy.linalg.inv(before_sensing) + sys.C.T @ scipy.linalg.solve(sys.R, sys.C))
        corrected = sys.A @ upsilon @ sys.A.T
    return symmetrize((1.0 - g) * blind + sys.Q + g * corrected)
