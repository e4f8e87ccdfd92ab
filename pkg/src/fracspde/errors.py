"""Exception hierarchy for fracspde."""


class FracSPDEError(Exception):
    """Base class for all fracspde errors."""


class DomainError(FracSPDEError, ValueError):
    """An argument lies outside the domain of the operation."""


class UnsupportedParameterError(FracSPDEError, ValueError):
    """The parameters are valid but not covered by the implemented formulas."""


class ConvergenceError(FracSPDEError, ArithmeticError):
    """A series or quadrature failed to reach the requested tolerance."""


class DivergenceError(ConvergenceError):
    """The requested integral or series does not converge."""


class RegimeError(FracSPDEError):
    """The equation has no random field solution (or the regime is excluded)."""


class ConditioningError(FracSPDEError, ArithmeticError):
    """A covariance matrix could not be factorized within the jitter budget."""


class ResolutionError(FracSPDEError, ValueError):
    """A discretization is too coarse to be meaningful."""


class CancelledError(FracSPDEError):
    """A long computation was cancelled through its cancellation token."""
