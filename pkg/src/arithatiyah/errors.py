"""Exception types shared across the package."""


class ArithAtiyahError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ArithAtiyahError, ValueError):
    """A denominator or logarithm argument vanishes at an evaluation point."""


class BidegreeError(ArithAtiyahError, ValueError):
    pass


class CoverMismatch(ArithAtiyahError, ValueError):
    pass


class GluingError(ArithAtiyahError):
    """Chartwise data fails to agree on an overlap within tolerance."""

    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class RankError(ArithAtiyahError, ValueError):
    pass


class IdentityViolation(ArithAtiyahError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class SingularLattice(ArithAtiyahError, ValueError):
    pass


class NotABasis(ArithAtiyahError, ValueError):
    pass


class NoRealStructure(ArithAtiyahError, ValueError):
    pass


class SingularCurve(ArithAtiyahError, ValueError):
    pass


class InvariantViolation(ArithAtiyahError, ValueError):
    def __init__(self, condition, detail=""):
        super().__init__(f"{condition}: {detail}" if detail else condition)
        self.condition = condition


class KernelAnomaly(ArithAtiyahError):
    pass


class InconsistentInput(ArithAtiyahError, ValueError):
    pass


class ParseError(ArithAtiyahError, ValueError):
    """Input text could not be parsed; ``location`` points into the source."""

    def __init__(self, message, location=None):
        where = f" at {location}" if location is not None else ""
        super().__init__(f"{message}{where}")
        self.location = location


class QuadratureWarning(UserWarning):
    pass
