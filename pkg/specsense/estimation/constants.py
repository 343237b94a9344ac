from typing import Final

# averaged bound fixed-point iteration
BOUND_TOL: Final[float] = 1e-10
BOUND_MAX_ITER: Final[int] = 100_000
# changes this many ulps of the largest entry count as converged
ROUNDING_ULPS: Final[int] = 64

# periods of plain iteration before a slowly contracting cycle is handed to the fixed point solver
FIXED_POINT_START: Final[int] = 500
FIXED_POINT_XTOL: Final[float] = 1e-13
POLISH_ITER: Final[int] = 200

# bisection width of the minimum reception rate
MIN_GAMMA_TOL: Final[float] = 1e-6

# the information form is used for the corrected update only below this condition number of P
INFORMATION_FORM_MAX_COND: Final[float] = 1e10
