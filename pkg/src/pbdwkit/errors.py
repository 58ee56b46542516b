"""Exception hierarchy shared by all pbdwkit modules.

The CLI maps these onto process exit codes: validation problems exit 2,
ill-posedness exits 3, benchmark invariant violations exit 4.
"""


class PbdwError(Exception):
    """Base class for all errors raised by pbdwkit."""


class ValidationError(PbdwError, ValueError):
    """Bad input: dimension mismatch, violated precondition, or bad config."""


class RankZeroError(ValidationError):
    """A construction that requires at least one independent vector got none."""


class IntegrityError(PbdwError):
    """On-disk artifact is corrupt or inconsistent with its manifest."""


class IllPosedError(PbdwError):
    """Stability constant below the 1e-12 floor; reconstruction refused."""


class SelectionExhaustedError(IllPosedError):
    """Greedy selection ran out of admissible dictionary candidates."""


class CoverageError(PbdwError):
    """A query point or snapshot is not covered by any partition window."""
