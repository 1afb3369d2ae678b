"""Exception types shared across the toolkit."""


class MonoresError(Exception):
    """Base class for all toolkit errors."""


class ParseError(MonoresError):
    """Malformed ideal input; carries a 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        location = ""
        if line is not None:
            location = f" (line {line}" + (f", column {column}" if column is not None else "") + ")"
        super().__init__(message + location)
        self.line = line
        self.column = column


class CapExceededError(MonoresError):
    """An enumeration grew past its configured cap."""


class NotMinimalError(MonoresError):
    """The operation requires a complex with pairwise distinct labels along inclusions."""


class NotGenericError(MonoresError):
    """The operation requires a generic ideal."""


class GenerationError(MonoresError):
    """Random construction exhausted its retry budget."""
