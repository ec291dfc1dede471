class GeometryError(Exception):
    """Base class for all failures raised by the engine."""


class DomainError(GeometryError):
    """A point lies outside the chart's coordinate box."""


class ConditioningError(GeometryError):
    """The metric is too close to singular to invert safely."""


class DegeneracyError(GeometryError):
    """A family of vectors is linearly dependent."""


class RankError(GeometryError):
    """A map does not have the rank an operation requires."""


class InstabilityError(GeometryError):
    """The rank of a map changes across the sample set."""


class AnisotropyError(GeometryError):
    """Horizontal stretch factors disagree, so the map is not conformal."""


class PreconditionError(GeometryError):
    """An input violates the documented precondition of an operation."""


class ConfigError(GeometryError):
    """A run configuration or expression could not be resolved."""
