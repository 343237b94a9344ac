from typing import Final

# invariant names reported by validate_system
Q_PSD: Final[str] = 'q_symmetric_psd'
R_POSITIVE_DEFINITE: Final[str] = 'r_positive_definite'
C_FULL_COLUMN_RANK: Final[str] = 'c_full_column_rank'
CONTROLLABLE: Final[str] = 'controllable'
