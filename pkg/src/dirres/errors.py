"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: data problems exit 2, numerical
breakdowns exit 3.
"""


class DirresError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 2


class GraphError(DirresError, ValueError):
    """Invalid graph input or a graph violating an operation's precondition."""


class ParseError(GraphError):
    """Malformed edge-list line."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GeneratorError(DirresError, ValueError):
    """Random graph generator could not satisfy its constraints."""


class BudgetExceededError(DirresError, ValueError):
    """Brute-force enumeration would exceed the configured subset cap."""

    def __init__(self, required, cap):
        self.required = required
        self.cap = cap
        super().__init__(
            f"brute force needs {required} subset evaluations, cap is {cap}"
        )


class NumericalError(DirresError, ArithmeticError):
    """Numerical breakdown: singular pivot, vanishing denominator, drift."""

    exit_code = 3


class SingularMatrixError(NumericalError):
    pass


class IllConditionedWarning(RuntimeWarning):
    """Emitted when an inverse is computed for an ill-conditioned matrix."""
