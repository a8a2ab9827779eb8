"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class PcspError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(PcspError, ValueError):
    """A precondition on an argument does not hold."""


class ParseError(InvalidInput):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class CapExceeded(PcspError):
    """A construction would exceed the configured size cap."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")


class BudgetExceeded(PcspError):
    """A search ran out of its node budget before reaching a verdict."""

    def __init__(self, nodes: int, budget: int, lower: int | None = None, upper: int | None = None):
        self.nodes = nodes
        self.budget = budget
        self.lower = lower
        self.upper = upper
        msg = f"search budget of {budget} nodes exhausted"
        if lower is not None:
            msg += f" (bounds {lower}..{upper})"
        super().__init__(msg)


class HasLoop(PcspError):
    """Raised where a proper colouring is requested for a graph with a loop."""


class TemplateMismatch(InvalidInput):
    """Pipeline steps whose templates do not chain."""
