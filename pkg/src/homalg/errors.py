"""Exception hierarchy shared by the library and the CLI."""


class HomalgError(Exception):
    """Base class for all toolkit errors."""


class FormatError(HomalgError):
    """Malformed graph text (bad header, bad edge line, vertex out of range)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ParameterError(HomalgError):
    """Invalid argument values (family parameters, CLI arguments, ...)."""


class ResourceCapError(HomalgError):
    """A configured size cap would be exceeded (power size, iso order, ...)."""


class PreconditionError(HomalgError):
    """Structural precondition violated (wrong regularity, loops present, ...)."""
