"""Exception hierarchy shared by every module."""


class GraphPolyError(Exception):
    """Base class for all library errors."""


class InputError(GraphPolyError, ValueError):
    """Invalid argument: unknown edge id, bad subdivision factor, etc."""


class ParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GuardExceeded(GraphPolyError):
    """An exponential-time routine was asked to run above its size guard."""


class DivisibilityError(GraphPolyError, ArithmeticError):
    """Exact polynomial division left a nonzero remainder."""


class PreconditionError(InputError):
    pass


class DomainError(InputError):
    """Numeric parameters outside the admissible domain (e.g. a nonpositive belief)."""


class NumericError(GraphPolyError, ArithmeticError):
    pass
