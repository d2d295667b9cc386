"""Exception hierarchy for haraeq."""


class HaraEqError(Exception):
    """Base class for all package errors."""


class NonPositivePrice(HaraEqError):
    """A price argument was zero or negative."""


class GammaEqualsOne(HaraEqError):
    """Curvature 1 (logarithmic utility) is outside the supported family."""


class GammaOutOfRange(HaraEqError):
    """Curvature outside the range the requested operation supports."""


class IndexOutOfRange(HaraEqError):
    """Symmetric-sum order outside the valid range."""


class ZeroPolynomial(HaraEqError):
    """Root isolation was asked for the zero polynomial."""


class DegenerateLeadingCoefficient(HaraEqError):
    """Cubic classification requires a nonzero leading coefficient."""


class WrongArity(HaraEqError):
    """Certificate specialised to a fixed number of consumer types."""


class UnsupportedGamma(HaraEqError):
    """Certificate specialised to a fixed curvature value."""


class ParameterOutOfRange(HaraEqError):
    """Parameter outside its admissible open interval."""


class RangeInvalid(HaraEqError):
    """Bad scan range (empty, non-positive, or too few points)."""


class ConfigParse(HaraEqError):
    """Economy or run configuration file could not be parsed."""


class EconomyInvalid(HaraEqError):
    """Economy description violates a model invariant."""


class NegativeDemandWarning(UserWarning):
    """Interior-solution assumption produced a negative demand; flagged,
    never clamped."""
