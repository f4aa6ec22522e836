"""Exception hierarchy shared by every module."""


class CoxeterError(Exception):
    """Base class for all errors raised by coxhecke."""


class ParseError(CoxeterError):
    """Malformed system file or word; ``position`` locates the offending item."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at {position})"
        super().__init__(message)


class PreconditionError(CoxeterError, ValueError):
    """An operation was called outside its documented domain."""


class SystemMismatchError(PreconditionError):
    """Elements from two different Coxeter systems were combined."""


class BudgetExceededError(CoxeterError):
    """A configured resource cap was hit; the result would have been truncated."""

    def __init__(self, message, limit=None):
        self.limit = limit
        super().__init__(message)
