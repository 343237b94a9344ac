from typing import Final

# a trial stops and is reported as diverged once the covariance trace exceeds this value
DIVERGENCE_TRACE: Final[float] = 1e15
# sensing times above this fraction of the shortest mean holding time make channel flips during sensing likely
SENSING_FLIP_RATIO: Final[float] = 0.1
# horizons shorter than this many sensing periods give noisy averages
MIN_HORIZON_PERIODS: Final[int] = 10
# events drawn per batch by the vectorised sampler
EVENT_BATCH: Final[int] = 1 << 16
