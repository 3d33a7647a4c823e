"""Exception hierarchy shared by every module.

The CLI maps these onto exit codes: input problems exit with 2, resource
problems with 3.
"""

from __future__ import annotations


class HedetniemiError(Exception):
    """Base class for all errors raised by this package."""


class InputError(HedetniemiError, ValueError):
    """Malformed or out-of-range input (bad vertex, wrong length, ...)."""


class ParseError(InputError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}".strip() if where else message)


class UnsupportedFeatureError(InputError):
    """The target format cannot represent the graph (e.g. loops in graph6)."""


class PreconditionError(InputError):
    """A documented precondition does not hold (improper coloring, bad palette)."""


class ResourceError(HedetniemiError):
    """The instance exceeds a configured size guard."""


class SearchTimeout(HedetniemiError):
    """A search exhausted its node or time budget before reaching an answer.

    Distinct from an UNSAT outcome; ``lower`` and ``upper`` carry whatever
    bounds were established before the budget ran out.
    """

    def __init__(self, message: str, lower: int | None = None, upper: int | None = None, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness
