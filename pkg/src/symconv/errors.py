"""Exception types shared across the package."""


class UsageError(ValueError):
    """Bad arguments from the caller: mixed rings, domain violations, malformed input."""


class ConsistencyError(ArithmeticError):
    """An internal invariant failed, e.g. a division that was supposed to be exact."""
