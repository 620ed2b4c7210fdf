"""Exception types shared across the package."""


class FieldError(ValueError):
    """A value violates a domain precondition (zero inverse, bad modulus, ...)."""


class ContextMismatchError(ValueError):
    """Operands live over different fields."""


class CountOverflowError(OverflowError):
    """An exact count would exceed the 64-bit budget."""
