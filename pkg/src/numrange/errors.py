"""Exception hierarchy for numrange."""


class NumRangeError(Exception):
    """Base class for all errors raised by numrange."""


class ConfigurationError(NumRangeError, ValueError):
    """Raised when a resolution, exponent or other setting is invalid."""


class DimensionError(NumRangeError, ValueError):
    """Raised when operands have incompatible shapes."""


class DomainError(NumRangeError, ValueError):
    """Raised when a closed form is evaluated outside its domain."""


class HypothesisError(NumRangeError, ValueError):
    """Raised when a matrix lies outside the class a closed form covers.

    The message names the violated condition.
    """


class DegenerateParameterError(NumRangeError, ArithmeticError):
    """Raised when a parametrized formula hits a vanishing denominator."""


class GridMismatchError(NumRangeError, ValueError):
    """Raised when two point clouds were not generated on the same grid."""


class MatrixParseError(NumRangeError, ValueError):
    """Raised for malformed textual matrices."""
