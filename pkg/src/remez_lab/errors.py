"""Exception hierarchy for remez_lab."""


class RemezLabError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(RemezLabError, ValueError):
    """A point or direction does not match the ambient dimension."""


class InadmissibleExponentError(RemezLabError, ValueError):
    """The exponent p lies outside (-1/d, 0) U [0, inf)."""


class DegenerateSetError(RemezLabError):
    """A set has zero (or unresolvable) measure at the given budget."""


class DegenerateSampleError(RemezLabError):
    """Every sample evaluated to zero, so the estimate is undefined."""


class QuadratureError(RemezLabError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class SamplerError(RemezLabError):
    """The requested sampler cannot be used for this measure."""


class ConfigError(RemezLabError, ValueError):
    """Invalid experiment configuration."""
