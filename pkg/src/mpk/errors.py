"""Shared exception types."""


class VerificationError(ArithmeticError):
    """An identity the library promises to maintain failed with a witness."""


class BudgetError(ValueError):
    """An exhaustive enumeration would exceed the configured budget."""
