"""Exception types shared across the package."""


class FracBesselError(Exception):
    """Base class for all package errors."""


class DomainError(FracBesselError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """A gamma factor in a numerator sits exactly at a pole."""

    def __init__(self, argument: float, index: int):
        self.argument = argument
        self.index = index
        super().__init__(f"gamma pole at argument {argument!r} (numerator index {index})")


class EvaluationError(FracBesselError, ArithmeticError):
    """A numeric evaluation produced NaN or failed to converge irrecoverably."""
