"""Exception types shared across the package."""


class HyperkError(Exception):
    """Base class for all errors raised by hyperk."""


class ZeroDivisorDenominator(HyperkError, ZeroDivisionError):
    """Division by a hyperbolic number with a vanishing idempotent component."""


class EmptySet(HyperkError, ValueError):
    pass


class NotOrdered(HyperkError, ValueError):
    """Interval endpoints are reversed or incomparable."""


class PieceOutsideParent(HyperkError, ValueError):
    pass


class DomainError(HyperkError, ValueError):
    """An expression was evaluated outside its domain."""


class NotDifferentiable(HyperkError):
    pass


class UnknownFunction(HyperkError, ValueError):
    pass


class ExprSyntaxError(HyperkError, SyntaxError):
    """Malformed expression text; ``position`` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class GridTooLarge(HyperkError, ValueError):
    pass


class JumpOutsideDomain(HyperkError, ValueError):
    pass


class NoConvergence(HyperkError, ArithmeticError):
    """Refinement cap reached; ``result`` carries the partial trace when available."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result
