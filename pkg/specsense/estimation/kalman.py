from typing import Optional

import numpy as np
import numpy.typing as npt

from specsense.core.exceptions import DimensionMismatchError
from specsense.dynamics.models import LinearSystem
from specsense.estimation.covariance import correct_cov
from specsense.estimation.models import CovarianceMatrix, FilterState


def initial_filter_state(sys: LinearSystem, x0: Optional[npt.ArrayLike] = None) -> FilterState:
    """Filter state for step 1 with prediction covariance P_{1|0} = Q."""
    x_hat = np.zeros(sys.q1) if x0 is None else np.asarray(x0, dtype=float)
    return FilterState(x_hat=x_hat, P=CovarianceMatrix(entries=sys.Q), k=1)


def kf_step(fs: FilterState, sys: LinearSystem, measurement: Optional[npt.ArrayLike] = None) -> FilterState:
    """
    One step of the Kalman filter with intermittent observations. The gain is applied only if the measurement
    packet arrived; the returned state carries the prediction (and its covariance) for the following step.
    :param fs: State holding x_{k|k-1} and P_{k|k-1}.
    :param sys: Plant.
    :param measurement: y_k if the packet was received, None if it was lost or not sent.
    :return: State holding x_{k+1|k}, P_{k+1|k} and the filtered estimate x_{k|k}.
    """
    P = fs.P.entries
    if fs.x_hat.shape[0] != sys.q1 or P.shape != (sys.q1, sys.q1):
        raise DimensionMismatchError(f"Filter state does not match a plant with q1={sys.q1}.")
    x_filtered = fs.x_hat
    received = measurement is not None
    if received:
        y = np.asarray(measurement, dtype=float).reshape(-1)
        if y.shape[0] != sys.q2:
            raise DimensionMismatchError(f"Measurement has {y.shape[0]} entries, plant expects {sys.q2}.")
        innovation_cov = sys.C @ P @ sys.C.T + sys.R
        # K = P C^T (C P C^T + R)^-1
        gain = np.linalg.solve(innovation_cov, sys.C @ P).T
        x_filtered = fs.x_hat + gain @ (y - sys.C @ fs.x_hat)
    return FilterState(
        x_hat=sys.A @ x_filtered,
        P=CovarianceMatrix(entries=correct_cov(P, sys, received)),
        k=fs.k + 1,
        x_filtered=x_filtered,
    )
