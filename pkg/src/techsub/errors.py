"""Exception hierarchy shared across the package.

The three leaf classes map one-to-one onto the CLI's nonzero exit codes,
so library callers and shell scripts can distinguish failure stages.
"""


class TechsubError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TechsubError):
    """Input text could not be parsed (malformed CSV row, bad manifest)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(TechsubError):
    """Well-formed input violates a domain constraint (duplicate years,
    level outside (0, K), share outside (0, 1), invalid parameters)."""


class EstimationError(TechsubError):
    """A fit cannot be computed (too few observations, degenerate data)."""
