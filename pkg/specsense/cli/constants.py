from typing import Final

FLOAT_FORMAT: Final[str] = '.12g'

SOLVE_COLUMNS: Final[tuple[str, ...]] = ('p_I', 'n_star', 'tau_star_s', 'phi_star', 'gamma_star', 'feasible')
VALIDATE_COLUMNS: Final[tuple[str, ...]] = ('quantity', 'analytic', 'empirical', 'standard_error', 'within_3se')

# Monte Carlo defaults of the validate command
DEFAULT_TRIALS: Final[int] = 200
DEFAULT_MC_HORIZON: Final[int] = 1000
DEFAULT_MASTER_SEED: Final[int] = 0
# sensing steps drawn for the stand-alone reception rate check, per trial
RECEPTION_DRAWS_PER_TRIAL: Final[int] = 5000
# a comparison passes within this many standard errors
SE_MULTIPLIER: Final[float] = 3.0

EXIT_OK: Final[int] = 0
EXIT_INFEASIBLE: Final[int] = 1
EXIT_USAGE: Final[int] = 2
