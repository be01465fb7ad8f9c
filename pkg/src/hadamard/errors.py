"""Exception hierarchy shared by every module."""


class HadamardError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(HadamardError, ValueError):
    """Malformed expression text. ``offset`` is the byte offset of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifierError(ParseError):
    pass


class ArityError(ParseError):
    pass


class UsageError(HadamardError, ValueError):
    """Arguments outside a documented precondition."""


class DomainError(HadamardError, ArithmeticError):
    """An expression was evaluated outside its domain of definition."""


class NumericalFailure(HadamardError, ArithmeticError):
    """Overflow, non-finite results, or quadrature that did not converge."""
