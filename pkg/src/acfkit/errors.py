"""Exception types raised across the package.

Every error maps to one of three CLI exit codes: configuration problems
(bad config files, invalid parameter combinations), data problems
(missing or degenerate inputs), and vote-theorem check failures.
"""


class AcfKitError(Exception):
    """Base class for all package errors."""

    exit_code = 3


class ConfigError(AcfKitError):
    """Invalid or unparseable configuration."""

    exit_code = 2


class DataError(AcfKitError):
    """Invalid, missing, or degenerate input data."""

    exit_code = 3


class TheoremViolation(AcfKitError):
    """A vote-theorem sweep found a negative recall margin."""

    exit_code = 4


# -- signal layer -------------------------------------------------------------

class NonFinite(DataError):
    """Input contains NaN or Inf values."""


class ConstantChannel(DataError):
    """A channel has zero variance and cannot be standardized."""


class TooShort(DataError):
    """Segment is shorter than the requested truncation length."""


class NegativeScore(DataError):
    """HAMD scores must be nonnegative."""


class UnstableCoupling(ConfigError):
    """Coupling matrix has spectral radius >= 1, process is nonstationary."""


class MismatchedChannels(ConfigError):
    """Generator configs disagree on channel count or frame rate."""


# -- correlation features ------------------------------------------------------

class DelayTooLarge(DataError):
    """Requested delay is not smaller than the channel length."""


class LengthMismatch(DataError):
    """Paired inputs have different lengths."""


# -- classifier ----------------------------------------------------------------

class ShapeMismatch(DataError):
    """Tensor shapes are inconsistent with the model configuration."""


class SingleClassDataset(DataError):
    """Training requires at least one sample of every class."""


# -- voting --------------------------------------------------------------------

class EmptyVote(DataError):
    """A session vote needs at least one segment prediction."""


class TooManySegments(DataError):
    """Brute-force enumeration is limited to 24 segments."""


# -- metrics -------------------------------------------------------------------

class Empty(DataError):
    """Metrics need at least one labeled prediction."""


class MissingClass(DataError):
    """A metric requires every class to appear among the true labels."""


class SingleClass(DataError):
    """AUC requires both classes among the true labels."""


# -- pipeline ------------------------------------------------------------------

class IoError(DataError):
    """A file or directory could not be read or written."""


class MissingSplit(DataError):
    """Evaluation requires a nonempty held-out split."""
