"""Exception types shared across the toolkit."""


class ToolkitError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameter(ToolkitError):
    """A constructor or operation invariant was violated."""


class MalformedQuantity(ToolkitError):
    """Quantity string does not parse (bad number or unknown suffix)."""


class NonFiniteInput(ToolkitError):
    """A numeric kernel received NaN or infinity."""


class QuadratureNotConverged(ToolkitError):
    """Adaptive quadrature failed to meet the requested tolerance."""


class DegenerateFit(ToolkitError):
    """Fringe fit is underdetermined (flat counts or span below one period)."""


class InvalidVisibility(ToolkitError):
    """Requested fringe visibility lies outside [0, 1]."""


class TooFewSamples(ToolkitError):
    """Accelerometer trace is shorter than the required minimum."""


class LineNotFound(ToolkitError):
    """No spectral line within tolerance of the requested frequency."""
