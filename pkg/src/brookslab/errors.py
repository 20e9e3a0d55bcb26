"""Exception types shared across brookslab."""


class BrooksLabError(Exception):
    """Base class for all library errors."""


class GraphFormatError(BrooksLabError, ValueError):
    """Malformed graph input (bad ids, self-loops, unparsable lines)."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class PreconditionError(BrooksLabError, ValueError):
    """An operation was called on input outside its contract.

    ``witness`` carries whatever certifies the violation: a vertex, an
    edge, a clique, a component.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StuckVertexError(PreconditionError):
    """Greedy coloring found a vertex with no free color."""

    def __init__(self, vertex):
        super().__init__(f"vertex {vertex} has no free color", witness=vertex)
        self.vertex = vertex


class WindowTooSmallError(PreconditionError):
    """A windowed construction needs more room than the window offers."""


class BudgetExceededError(BrooksLabError):
    """An exhaustive search exceeded its node budget."""


class InvariantViolation(BrooksLabError, AssertionError):
    """An internal guarantee failed; this is a bug, not bad input."""
