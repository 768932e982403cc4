"""Default sampling parameters, shared by library and CLI."""

DEFAULT_SEED = 1729
DEFAULT_TRIALS = 10_000
DEFAULT_BOUND = 8
