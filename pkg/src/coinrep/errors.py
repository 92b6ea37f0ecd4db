"""Exception types raised by coinrep.

Every domain error derives from :class:`CoinrepError`, which is itself a
``ValueError`` so callers that only care about bad input can catch that.
"""


class CoinrepError(ValueError):
    """Base class for all domain precondition violations."""


class NotHermitian(CoinrepError):
    pass


class OutOfRange(CoinrepError):
    pass


class InvalidDensity(CoinrepError):
    pass


class NotQuantum(CoinrepError):
    pass


class NotPure(CoinrepError):
    pass


class BadParameter(CoinrepError):
    pass


class DegenerateDenominator(CoinrepError):
    pass


class VanishingNormalizer(CoinrepError):
    pass


class ZeroOverlapDenominator(CoinrepError):
    pass


class NoConsistentMapping(CoinrepError):
    pass


class ZeroMatrix(CoinrepError):
    pass


class TraceViolation(CoinrepError):
    pass


class NotNormalized(CoinrepError):
    pass


class InconsistentTable(CoinrepError):
    pass


class BadSpec(CoinrepError):
    pass


class SchemaError(CoinrepError):
    """A state or table file failed schema validation."""
