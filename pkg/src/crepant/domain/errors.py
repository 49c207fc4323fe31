from typing import Optional


class CrepantError(Exception):
    """ Base class for every error raised by the crepant package. """
    pass


# Caller contract violations

class PreconditionError(CrepantError, ValueError):
    """ An operation was called outside its documented domain. """
    pass

class RangeError(PreconditionError):
    """ A size parameter (n, m, an index) is outside the supported range. """
    pass

class ParityError(RangeError):
    """ build_B needs n = 2m. """
    pass

class DimensionMismatchError(PreconditionError):
    """ Vectors or cones live in different ambient dimensions. """
    pass

class NotFreeError(PreconditionError):
    """
    A closed-form criterion was asked about a non-free orbit cone.
    The closed forms are proven for free cones only; use the ratgeom oracle instead.
    """
    pass

class NonGenericError(PreconditionError):
    """ A parameter vector lies on a hyperplane of the arrangement. """
    pass

class ConfigError(CrepantError, ValueError):
    """ Invalid run configuration. """
    pass


# Computation failures

class ResourceBoundError(CrepantError):
    """ A desk-scale bound would be exceeded. The message names the bound. """
    pass

class SelfCheckError(CrepantError):
    """ Two independent computations of the same quantity disagree. """
    pass

class DegenerateSampleError(CrepantError):
    """ Random sampling kept producing degenerate data. """
    pass

class InhomogeneousError(CrepantError):
    """ A polynomial has monomials of different multidegree. """

    def __init__(self, first: object, second: object, message: Optional[str] = None):
        self.first = first
        self.second = second
        super().__init__(message or f"inhomogeneous polynomial: {first} and {second} have different degrees")
