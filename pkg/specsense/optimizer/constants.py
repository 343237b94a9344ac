from typing import Final

# absolute bisection width of sensing-time roots, seconds
TAU_XTOL: Final[float] = 1e-9
# log-spaced points scanned for sign changes of d phi_bar / d tau
STATIONARY_SCAN_POINTS: Final[int] = 64
# the scan starts at this fraction of tau_max
STATIONARY_SCAN_FLOOR: Final[float] = 1e-9
# relative tolerance under which two objective values count as tied
TIE_RTOL: Final[float] = 1e-12
# the scan for the largest admissible period stops here when nothing else bounds it
MAX_PERIOD: Final[int] = 1000
# default resolution of the brute-force sensing-time grid
DEFAULT_TAU_GRID_SIZE: Final[int] = 100_000
MIN_TAU_GRID_SIZE: Final[int] = 1000
