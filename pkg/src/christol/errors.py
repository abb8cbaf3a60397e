"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class ChristolError(Exception):
    """Base class for every error raised by this package."""


class InvalidFieldError(ChristolError, ValueError):
    pass


class FieldMismatchError(ChristolError, TypeError):
    pass


class NotFurstenbergError(ChristolError, ValueError):
    pass


class CannotExpandError(ChristolError, ValueError):
    """A rational expression has no power series expansion of the requested kind."""


class DomainError(ChristolError, ValueError):
    pass


class DimensionError(ChristolError, ValueError):
    pass


class NotInvariantError(ChristolError, ValueError):
    """An operator maps a basis element outside the span of the basis."""


class OrbitTooLongError(ChristolError, RuntimeError):
    pass


class InconclusiveError(ChristolError, RuntimeError):
    pass


class ParseError(ChristolError, ValueError):
    def __init__(self, message: str, position: int | str | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class BudgetExceededError(ChristolError, RuntimeError):
    def __init__(self, message: str, partial=None):
        super().__init__(message)
        self.partial = partial
