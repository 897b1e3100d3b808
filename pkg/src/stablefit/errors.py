"""Exception hierarchy with stable machine-readable codes.

Every error raised by this package derives from :class:`StableError` and
carries a ``code`` string that the CLI emits verbatim, so downstream tooling
can match on codes instead of messages.
"""


class StableError(Exception):
    """Base class for all stablefit errors."""

    code = "StableError"


# --- parameter domain -------------------------------------------------------

class AlphaOutOfRange(StableError):
    code = "AlphaOutOfRange"


class BetaOutOfRange(StableError):
    code = "BetaOutOfRange"


class NonPositiveScale(StableError):
    code = "NonPositiveScale"


class LocationNotFinite(StableError):
    code = "LocationNotFinite"


# --- density evaluation -----------------------------------------------------

class NotClosedForm(StableError):
    code = "NotClosedForm"


class WindowTooNarrow(StableError):
    code = "WindowTooNarrow"


class QuadratureNoConvergence(StableError):
    code = "QuadratureNoConvergence"


class MomentUndefined(StableError):
    code = "MomentUndefined"


class VarianceUndefined(StableError):
    code = "VarianceUndefined"


# --- estimation -------------------------------------------------------------

class SampleTooSmall(StableError):
    code = "SampleTooSmall"


class DegenerateSample(StableError):
    code = "DegenerateSample"


class EcfDegenerate(StableError):
    code = "EcfDegenerate"


class InsufficientRegressionPoints(StableError):
    code = "InsufficientRegressionPoints"


class LogOfZero(StableError):
    code = "LogOfZero"


class MleAlphaRestriction(StableError):
    code = "MleAlphaRestriction"


class InitializationFailed(StableError):
    code = "InitializationFailed"


# --- harness / IO -----------------------------------------------------------

class EmptyRecords(StableError):
    code = "EmptyRecords"


class ColumnNotFound(StableError):
    code = "ColumnNotFound"


class TooFewPrices(StableError):
    code = "TooFewPrices"


class InputFileNotFound(StableError):
    code = "FileNotFound"
