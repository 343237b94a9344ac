import logging

import numpy as np
import numpy.typing as npt

from specsense.core.exceptions import DimensionMismatchError
from specsense.dynamics.constants import (
    C_FULL_COLUMN_RANK,
    CONTROLLABLE,
    Q_PSD,
    R_POSITIVE_DEFINITE,
)
from specsense.dynamics.models import InvariantCheck, LinearSystem, ValidationReport
from specsense.utils.linalg import (
    is_psd,
    is_symmetric,
    min_eigenvalue,
    numerical_rank,
    spectral_radius,
)

logger = logging.getLogger(__name__)


def controllability_matrix(sys: LinearSystem) -> np.ndarray:
    """Stacks [Q^1/2, A Q^1/2, ..., A^(q1-1) Q^1/2] column-wise."""
    blocks = [sys.process_noise_factor]
    for _ in range(1, sys.q1):
        blocks.append(sys.A @ blocks[-1])
    return np.hstack(blocks)


def validate_system(sys: LinearSystem) -> ValidationReport:
    """
    Checks the numerical invariants of the plant and reports the evidence for each.
    :param sys: Plant with structurally consistent matrices.
    :return: Report with one check per invariant and the spectral radius of A.
    """
    q_min = min_eigenvalue(sys.Q)
    r_min = min_eigenvalue(sys.R)
    c_rank = numerical_rank(sys.C)
    ctrb_rank = numerical_rank(controllability_matrix(sys))
    checks = (
        InvariantCheck(
            name=Q_PSD,
            passed=is_symmetric(sys.Q) and is_psd(sys.Q),
            value=q_min,
            detail=f"min eigenvalue of Q = {q_min:.6g}",
        ),
        InvariantCheck(
            name=R_POSITIVE_DEFINITE,
            passed=is_symmetric(sys.R) and r_min > 0.0,
            value=r_min,
            detail=f"min eigenvalue of R = {r_min:.6g}",
        ),
        InvariantCheck(
            name=C_FULL_COLUMN_RANK,
            passed=c_rank == sys.q1,
            value=float(c_rank),
            detail=f"rank(C) = {c_rank}, required {sys.q1}",
        ),
        InvariantCheck(
            name=CONTROLLABLE,
            passed=ctrb_rank == sys.q1,
            value=float(ctrb_rank),
            detail=f"rank of controllability matrix = {ctrb_rank}, required {sys.q1}",
        ),
    )
    report = ValidationReport(checks=checks, spectral_radius=spectral_radius(sys.A))
    for check in report.checks:
        if not check.passed:
            logger.warning(f'Plant invariant {check.name} violated: {check.detail}')
    return report


def simulate_step(
    sys: LinearSystem, x: npt.ArrayLike, rng: np.random.Generator
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Advances the plant by one step and measures the new state.
    :param sys: Plant.
    :param x: Current state (q1 entries).
    :param rng: Caller-owned generator; process noise is drawn before measurement noise.
    :return: Next state A x + w and its measurement C x_next + v.
    """
    state = np.asarray(x, dtype=float).reshape(-1)
    if state.shape[0] != sys.q1:
        raise DimensionMismatchError(f"State has {state.shape[0]} entries, plant expects {sys.q1}.")
    x_next = sys.A @ state + sys.process_noise_factor @ rng.standard_normal(sys.q1)
    y = sys.C @ x_next + sys.measurement_noise_factor @ rng.standard_normal(sys.q2)
    return x_next, y


def simulate_trajectory(
    sys: LinearSystem, x0: npt.ArrayLike, steps: int, rng: np.random.Generator
) -> tuple[npt.NDArray[np.float64], npt.NDArray[np.float64]]:
    """
    Repeats simulate_step.
    :return: States (steps x q1) and measurements (steps x q2), row k belonging to step k + 1.
    """
    states = np.empty((steps, sys.q1))
    measurements = np.empty((steps, sys.q2))
    x = np.asarray(x0, dtype=float)
    for k in range(steps):
        x, y = simulate_step(sys, x, rng)
        states[k], measurements[k] = x, y
    return states, measurements
