from pathlib import Path
from typing import Final

TXT_ENCODING: Final[str] = 'utf-8'

# Paths
CONFIG_PATH: Final[Path] = Path('config')
DEFAULT_CONFIG_PATH: Final[Path] = CONFIG_PATH / 'default.toml'

# Reference scenario: plant
DEFAULT_A: Final[tuple[tuple[float, ...], ...]] = ((1.05, 0.0), (1.0, 0.9))
DEFAULT_C: Final[tuple[tuple[float, ...], ...]] = ((1.0, 0.0), (0.0, 1.0))
DEFAULT_Q: Final[tuple[tuple[float, ...], ...]] = ((1.0, 0.0), (0.0, 1.0))
DEFAULT_R: Final[tuple[tuple[float, ...], ...]] = ((0.8, 0.0), (0.0, 0.8))
DEFAULT_SAMPLING_PERIOD: Final[float] = 1.0

# Reference scenario: channel (rates in 1/s)
DEFAULT_ALPHA: Final[float] = 5.0
DEFAULT_BETA: Final[float] = 20.0

# Reference scenario: sensing
DEFAULT_TAU_MAX: Final[float] = 0.02
DEFAULT_BANDWIDTH: Final[float] = 2e6
DEFAULT_EPS_D: Final[float] = 1.2
DEFAULT_SNR_DB: Final[float] = -3.0
DEFAULT_T_X: Final[float] = 0.05

# Reference scenario: energy
DEFAULT_E_S: Final[float] = 100.0
DEFAULT_E_TX: Final[float] = 100.0

# Reference scenario: performance target is the averaged bound at this (gamma, n)
DEFAULT_REFERENCE_GAMMA: Final[float] = 0.7
DEFAULT_REFERENCE_PERIOD: Final[int] = 6
