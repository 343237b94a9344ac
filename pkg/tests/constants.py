import math
from typing import Final

# reference scenario
REFERENCE_SPECTRAL_RADIUS: Final[float] = 1.05
REFERENCE_EPS_F: Final[float] = 0.799367
REFERENCE_GAMMA_MAX: Final[float] = 0.8 * math.exp(-0.25)
REFERENCE_GAMMA_AT_1E_4: Final[float] = 0.6216
REFERENCE_N_BAR_1: Final[int] = 16
# 1 - 1.05^-2
STABILITY_THRESHOLD_N1: Final[float] = 1.0 - 1.05**-2

# scalar plant A = C = Q = R = 1 with perfect reception converges to the golden ratio
GOLDEN_RATIO: Final[float] = (1.0 + math.sqrt(5.0)) / 2.0

# low-bandwidth detector for relative derivative checks
LOW_BANDWIDTH: Final[float] = 1e4

TEST_SEED: Final[int] = 20240611
