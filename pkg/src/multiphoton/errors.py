"""Exception hierarchy.

Each class carries the process exit code the command-line front end maps it to.
"""


class TransportError(Exception):
    exit_code = 1


class ValidationError(TransportError, ValueError):
    """Invalid input parameters."""

    exit_code = 2


class EvenChainLength(ValidationError):
    """The operation needs the zero-energy chain mode, which only exists for odd N."""


class ZeroCoupling(ValidationError):
    pass


class DegenerateTap(ValidationError):
    """The auxiliary resonator does not couple to the zero mode (J_z = 0)."""


class GridNotIncreasing(ValidationError):
    pass


class BoundViolated(TransportError):
    """An exact infidelity exceeded its analytic upper bound.

    ``row`` holds the offending sweep row and ``column`` the bound column
    that was exceeded.
    """

    exit_code = 3

    def __init__(self, message, row=None, column=None):
        super().__init__(message)
        self.row = row
        self.column = column


class NumericalPathology(TransportError, ArithmeticError):
    exit_code = 4


class EigFailure(NumericalPathology):
    pass


class ConsistencyError(NumericalPathology):
    """A quantity that is real by construction came out with a sizeable imaginary part."""
