"""Shared exception types."""


class UsageError(ValueError):
    """An operation was called with arguments outside its contract."""


class ParseError(UsageError):
    """Malformed graph text; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


class SizeGuardError(RuntimeError):
    """An exponential-time reference routine was asked to exceed its size guard."""
