"""Exception types raised by the geometry routines."""


class FinslerError(ValueError):
    """Base class for all domain errors raised by this package."""


class ZeroVector(FinslerError):
    """A nonzero tangent vector was required."""


class OutOfDomain(FinslerError):
    """A base point lies outside (or too close to the boundary of) the domain."""


class SingularTensor(FinslerError):
    """A numerically computed fundamental tensor could not be inverted."""


class LorentzSignature(FinslerError):
    """The Lorentzian quadratic form was negative on the given vector."""


class DegenerateWind(FinslerError):
    """Navigation wind is too strong (||W||_h >= 1) to define a Randers metric."""
