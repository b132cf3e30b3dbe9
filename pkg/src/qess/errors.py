"""Exception types shared across the package."""


class ValidationError(ValueError):
    """An input object violates its structural invariants."""


class DomainError(ValueError):
    """A numeric parameter lies outside its admissible range."""


class NumericDegeneracyError(ArithmeticError):
    """A computation hit a degenerate value (e.g. zero mean fitness)."""
