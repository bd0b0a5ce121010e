"""Exception hierarchy shared by every module of the package."""


class OddCFError(Exception):
    """Base class for errors raised by :mod:`oddcf`."""

    kind = "error"


class DomainError(OddCFError, ValueError):
    """An argument lies outside the domain of the operation."""

    kind = "domain"


class ParseError(OddCFError, ValueError):
    """Text does not match the rational or continued-fraction grammar."""

    kind = "parse"

    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        if position is None:
            super().__init__(message)
        else:
            super().__init__(f"at position {position}: {message}")


class BudgetExceededError(OddCFError, RuntimeError):
    """An enumeration would exceed its node budget."""

    kind = "budget"
