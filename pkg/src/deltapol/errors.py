"""Exception types shared across the package.

The CLI maps these onto its exit codes, so library code should raise
these rather than bare ValueError/RuntimeError where the distinction
matters to a caller.
"""


class ConfigError(ValueError):
    """Invalid user-supplied configuration (CLI exit code 2)."""


class DegenerateRegionError(ValueError):
    """Well strength p in the near-degenerate region p >= 5 (CLI exit code 3)."""


class ThresholdWindowError(ValueError):
    """Frequency inside the excluded window around the ionization threshold."""


class PoleEvaluationError(ValueError):
    """Free-propagator diagonal requested exactly on its pole."""


class ConvergenceError(RuntimeError):
    """A numerical routine failed to reach its requested tolerance (CLI exit code 4)."""
