"""Exception types shared across the library."""


class BenfordError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveInput(BenfordError):
    """A value that must be a positive finite real was zero, negative, or non-finite."""


class DomainError(BenfordError):
    """An argument fell outside its documented domain."""


class NotNormalized(BenfordError):
    """A density failed its normalization check."""


class TruncationError(BenfordError):
    """No admissible truncation order meets the certified tail bound."""


class QuadratureError(BenfordError):
    """The adaptive integrator could not reach the requested tolerance."""


class EmptyData(BenfordError):
    """No usable entries remained after filtering."""


class InsufficientData(BenfordError):
    """Too few observations for the requested statistic."""


class UnsupportedRatio(BenfordError):
    """Geometric ratio is an exact integer power of the base."""
