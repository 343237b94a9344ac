from typing import Final

# the sampling period must exceed this multiple of the longest mean holding time for step independence
INDEPENDENCE_FACTOR: Final[float] = 10.0
# holding times are drawn in chunks of this many idle/busy pairs
TRAJECTORY_CHUNK: Final[int] = 1024
