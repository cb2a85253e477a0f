"""Exception hierarchy shared by every module of the package."""


class XiConstError(Exception):
    """Base class for all package errors."""


class DomainError(XiConstError, ValueError):
    """Argument outside the region where an operation is defined."""


class PoleError(DomainError):
    """Evaluation requested at a pole."""


class PrecisionError(XiConstError, ArithmeticError):
    """A numerical procedure could not reach the requested accuracy."""


class InsufficientDataError(XiConstError, ValueError):
    """An input table (Stieltjes constants, eta values, zeros) is too short."""


class CapError(XiConstError, ValueError):
    """Index above the configured limit of a closed-form route."""


class InconclusiveError(XiConstError):
    """A sign or bound could not be decided at the available precision."""


class ZeroFileError(XiConstError, ValueError):
    """Malformed zero-ordinate file."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
