"""Exception and warning types raised across the package."""


class XaspError(Exception):
    """Base class for all errors raised by xasp."""


class ParseError(XaspError):
    """Malformed program text. Carries a 1-based line and column when known."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)


class NonGroundError(ParseError):
    """A variable appeared where only ground terms are accepted."""


class AspifError(ParseError):
    """Malformed or unsupported aspif input."""


class ResourceLimitError(XaspError):
    """A configured search cap was exceeded."""


class NotAnAnswerSetError(XaspError, ValueError):
    """An interpretation passed where an answer set is required is not one."""


class IntegrityError(XaspError):
    """A support table does not match the program or assumption set it is used with."""


class InternalInvariantError(XaspError):
    """An internal consistency check failed. Always a bug."""


class AspifWarning(UserWarning):
    """Recoverable oddity in aspif input (e.g. an unnamed body-only atom)."""


class SelectionCapWarning(UserWarning):
    """Support selection enumeration was truncated at the configured cap."""
