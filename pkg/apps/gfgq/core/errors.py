"""
Typed errors raised by gfgq.

The CLI maps these to exit codes in one place; pipeline nodes record them in
the decision state before the graph stops.
"""

from __future__ import annotations
from typing import Optional


class GfgqError(Exception):
    """Base class of every toolkit error."""


class FormulaSyntaxError(GfgqError):
    """Formula text outside the grammar."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None and line > 0 else ""
        super().__init__(f"{message}{where}")


class DuplicateQuantifierError(GfgqError):
    """A proposition is quantified twice in one prefix."""

    def __init__(self, prop: str):
        self.prop = prop
        super().__init__(f"proposition '{prop}' is quantified more than once")


class UnsupportedFragmentError(GfgqError):
    """Input outside the fragment an operation decides (non-prenex, non-behavioral, ...)."""


class DomainError(GfgqError):
    """Assignment domains do not match, clash, or leave a proposition unbound."""


class AlphabetMismatchError(GfgqError):
    """An automaton is read over propositions it was not built for."""


class AutomatonFormatError(GfgqError):
    """HOA text this toolkit cannot read back."""


class KripkeFormatError(GfgqError):
    """Malformed Kripke structure text."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{message}{where}")


class GuardExceededError(GfgqError):
    """An enumeration guard or state budget was tripped."""

    def __init__(self, guard: str, limit: int, requested: Optional[int] = None):
        self.guard = guard
        self.limit = limit
        self.requested = requested
        detail = f" (requested {requested})" if requested is not None else ""
        super().__init__(f"guard '{guard}' exceeded: limit {limit}{detail}")


class WitnessUnavailableError(GfgqError):
    """No winning strategy to extract a witness from."""


def check_guard(guard: str, requested: int, limit: int) -> None:
    """Raise GuardExceededError when `requested` is above `limit`."""
    if requested > limit:
        raise GuardExceededError(guard, limit, requested)
