"""Exception hierarchy shared by every module."""


class SchattenGeomError(Exception):
    """Base class for all library errors."""


class ShapeError(SchattenGeomError, ValueError):
    """Operands have incompatible or unsupported shapes."""


class DomainError(SchattenGeomError, ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateOperand(SchattenGeomError, ValueError):
    """An operand is zero where a nonzero operator is required."""


class HypothesisViolation(SchattenGeomError, ValueError):
    """A theorem hypothesis fails beyond tolerance."""


class NumericalFailure(SchattenGeomError, ArithmeticError):
    """A numerical routine did not converge or left its valid range."""
