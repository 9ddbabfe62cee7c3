"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LangDistError(Exception):
    """Base class for all errors raised by langdist."""


class ParseError(LangDistError, ValueError):
    """Malformed input file. Carries the offending path and line number."""

    def __init__(self, message: str, path=None, line: int | None = None):
        self.path = None if path is None else str(path)
        self.line = line
        where = ""
        if self.path is not None:
            where = self.path
            if line is not None:
                where += f":{line}"
            where += ": "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + message)
        self.message = message


class MissingValueError(LangDistError, ValueError):
    """Arithmetic was attempted on a distance whose status is Missing."""


class DegenerateInputError(LangDistError, ValueError):
    """Input is valid syntactically but the requested statistic is undefined."""
