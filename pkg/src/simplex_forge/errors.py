"""Exception hierarchy shared by all modules."""


class SimplexError(Exception):
    """Base class for every error raised by simplex_forge."""


class ContractViolation(SimplexError, ValueError):
    """An argument breaks a documented precondition."""


class DimensionMismatch(ContractViolation):
    pass


class ClosureViolation(ContractViolation):
    """The vectors of a loop do not sum to zero."""


class NonPositiveLength(ContractViolation):
    pass


class ArityTooSmall(ContractViolation):
    pass


class AngleDegenerate(ContractViolation):
    """A dihedral angle with vanishing sine would flatten the construction."""


class UnsupportedDimension(ContractViolation):
    pass


class InfeasibleInput(SimplexError):
    """Lengths violate the strict simplex inequalities."""


class NotPositive(SimplexError):
    """A loop required to be positive has non-positive main determinant."""


class RoundTripFailure(SimplexError):
    """Internal verification of a computed inverse exceeded its tolerance."""


class CrossCheckFailure(SimplexError):
    """Two independent computations of the same quantity disagree."""


class ParseError(SimplexError):
    pass


class ValidationError(ContractViolation):
    pass
