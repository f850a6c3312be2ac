"""Exception types shared across the package."""


class PhtopError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(PhtopError, ValueError):
    """An argument violates a documented precondition."""


class ParseError(PhtopError, ValueError):
    """A structure or diagram file is malformed.

    Carries the 1-based line number (or JSON path) where parsing failed,
    when that location is known.
    """

    def __init__(self, message, line=None, path=None):
        self.line = line
        self.path = path
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif path is not None:
            where = f" (at {path})"
        super().__init__(f"{message}{where}")


class TooLarge(PhtopError, ValueError):
    """Input exceeds a hard complexity guard."""
