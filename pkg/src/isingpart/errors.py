"""Exception types shared across the package."""


class IsingPartError(Exception):
    """Base class for all errors raised by isingpart."""


class GraphFormatError(IsingPartError, ValueError):
    """Malformed G-set text. ``lineno`` is 1-based, or None if not tied to a line."""

    def __init__(self, message, lineno=None):
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
        self.lineno = lineno


class GraphParseError(GraphFormatError):
    pass


class GraphRangeError(GraphFormatError):
    pass


class GraphValidationError(GraphFormatError):
    pass


class GraphConsistencyError(GraphFormatError):
    pass


class DomainError(IsingPartError, ValueError):
    """Argument outside the domain of an operation."""


class CapacityError(IsingPartError, ValueError):
    """Instance too large for exhaustive enumeration."""


class ConfigError(IsingPartError, ValueError):
    """Invalid solver or benchmark configuration."""


class SolverRuntimeError(IsingPartError, RuntimeError):
    """Worker pool failed while annealing."""
