"""Exception hierarchy.

Configuration and domain problems derive from ``ValueError``; failures of a
numerical precondition (near-orthogonal post-selection, a pole of a closed
form, a packet pushed off its grid) derive from ``ArithmeticError`` and carry
the offending quantity so that callers can report it.
"""


class WeakClockError(Exception):
    """Base class for every error raised by this package."""


class ConfigError(WeakClockError, ValueError):
    """Invalid experiment configuration."""


class BasisError(WeakClockError, ValueError):
    """Incompatible register layouts or dimensions."""


class DomainError(WeakClockError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class GridMismatchError(WeakClockError, ValueError):
    """Two sampled fields live on different grids."""


class NumericalPreconditionError(WeakClockError, ArithmeticError):
    """A numerical precondition failed.

    Parameters
    ----------
    message : str
        Human readable description.
    quantity : float, optional
        The value that violated the precondition.
    """

    def __init__(self, message, quantity=None):
        super().__init__(message)
        self.quantity = quantity


class BoundaryError(NumericalPreconditionError):
    """A sampled field has (or would have) support at a grid boundary."""


class IllConditionedError(NumericalPreconditionError):
    """An overlap used as a denominator is below the orthogonality threshold."""


class PoleError(NumericalPreconditionError):
    """A closed-form expression is evaluated at (or next to) its pole."""
