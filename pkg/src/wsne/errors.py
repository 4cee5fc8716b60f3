"""Error taxonomy shared across the library and CLI.

Bad user input raises ``ValueError`` subclasses (CLI exit code 2); a violated
internal invariant such as a solver returning an infeasible point raises
``InternalError`` (CLI exit code 3) so that genuine bugs are never confused
with usage mistakes.
"""

from __future__ import annotations


class InternalError(AssertionError):
    """An invariant the implementation guarantees was observed to fail."""


class GameFormatError(ValueError):
    """Malformed game or profile text; carries a 1-based location."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where = f" ({where})"
        super().__init__(f"{message}{where}")


class RescaleUndefinedError(ValueError):
    """Mass must be moved onto the small columns but they carry none."""
