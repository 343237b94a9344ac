import logging
from enum import StrEnum
from typing import Callable, Final

import numpy as np
import scipy.linalg

logger = logging.getLogger(__name__)

# relative tolerances used across the package
PSD_RTOL: Final[float] = 1e-9
SYMMETRY_RTOL: Final[float] = 1e-12
RANK_RTOL: Final[float] = 1e-10


class OrderMode(StrEnum):
    """How a matrix inequality ``X <= Y`` between covariances is decided."""

    LOEWNER = 'loewner'
    TRACE = 'trace'


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    """Returns the symmetric part (M + M^T) / 2."""
    return 0.5 * (matrix + matrix.T)


def spectral_radius(matrix: np.ndarray) -> float:
    """Maximum absolute eigenvalue; complex eigenvalues are handled."""
    return float(np.max(np.abs(np.linalg.eigvals(matrix))))


def singular_values(matrix: np.ndarray) -> np.ndarray:
    """Singular values in descending order."""
    return scipy.linalg.svdvals(matrix)


def numerical_rank(matrix: np.ndarray, rtol: float = RANK_RTOL) -> int:
    """
    Number of singular values above ``rtol`` times the largest singular value.
    :param matrix: Any real matrix.
    :param rtol: Relative singular value cutoff.
    :return: Numerical rank, 0 for the zero matrix.
    """
    sigma = singular_values(matrix)
    if sigma.size == 0 or sigma[0] == 0.0:
        return 0
    return int(np.sum(sigma > rtol * sigma[0]))


def min_eigenvalue(matrix: np.ndarray) -> float:
    """Smallest eigenvalue of the symmetric part of ``matrix``."""
    return float(np.linalg.eigvalsh(symmetrize(matrix))[0])


def is_symmetric(matrix: np.ndarray, rtol: float = SYMMETRY_RTOL) -> bool:
    """Whether ``matrix`` is square and symmetric up to ``rtol`` relative to its largest entry."""
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    scale = max(1.0, float(np.max(np.abs(matrix)))) if matrix.size else 1.0
    return bool(np.max(np.abs(matrix - matrix.T), initial=0.0) <= rtol * scale)


def is_psd(matrix: np.ndarray, rtol: float = PSD_RTOL) -> bool:
    """Positive semidefinite up to a negative eigenvalue slack of ``rtol * |trace|``."""
    return min_eigenvalue(matrix) >= -rtol * abs(float(np.trace(matrix)))


def is_positive_definite(matrix: np.ndarray) -> bool:
    """Positive definiteness by attempting a Cholesky factorization."""
    try:
        scipy.linalg.cholesky(symmetrize(matrix), lower=True)
    except np.linalg.LinAlgError:
        return False
    return True


def psd_sqrt(matrix: np.ndarray) -> np.ndarray:
    """
    Symmetric square root of a positive semidefinite matrix; small negative eigenvalues are clipped to zero.
    :param matrix: Symmetric PSD matrix.
    :return: S with S @ S = matrix (up to rounding).
    """
    eigenvalues, eigenvectors = np.linalg.eigh(symmetrize(matrix))
    root = np.sqrt(np.clip(eigenvalues, 0.0, None))
    return (eigenvectors * root) @ eigenvectors.T


def loewner_leq(lower: np.ndarray, upper: np.ndarray, rtol: float = PSD_RTOL) -> bool:
    """Whether ``upper - lower`` is PSD, with a slack of ``rtol * |trace(upper)|`` on the smallest eigenvalue."""
    return min_eigenvalue(upper - lower) >= -rtol * abs(float(np.trace(upper)))


def precedes(lower: np.ndarray, upper: np.ndarray, order: OrderMode = OrderMode.LOEWNER) -> bool:
    """
    Decides ``lower <= upper`` for covariance matrices.
    :param lower: Candidate smaller matrix.
    :param upper: Candidate larger matrix.
    :param order: Löwner order, or a comparison of traces.
    :return: Whether the inequality holds.
    """
    if order is OrderMode.TRACE:
        return float(np.trace(lower)) <= float(np.trace(upper)) * (1.0 + PSD_RTOL)
    return loewner_leq(lower, upper)


def bisect_boundary(
    predicate: Callable[[float], bool], feasible_end: float, infeasible_end: float, tol: float
) -> float:
    """
    Bisects the boundary of a monotone predicate. The predicate must hold at ``feasible_end`` and fail at
    ``infeasible_end``; both ends may be ordered either way. The returned point always satisfies the predicate.
    :param predicate: Monotone boolean function on the interval.
    :param feasible_end: End of the interval where the predicate holds.
    :param infeasible_end: End of the interval where the predicate fails.
    :param tol: Final bracket width.
    :return: Point on the feasible side within ``tol`` of the boundary.
    """
    steps = 0
    while abs(feasible_end - infeasible_end) >= tol:
        midpoint = 0.5 * (feasible_end + infeasible_end)
        if predicate(midpoint):
            feasible_end = midpoint
        else:
            infeasible_end = midpoint
        steps += 1
    logger.debug(f'Bisection finished after {steps} steps at {feasible_end:.12g}.')
    return feasible_end
