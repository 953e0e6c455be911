"""Exception hierarchy shared across the package."""


class MeshcastError(Exception):
    """Base class for all errors raised by this package."""


class GraphFormatError(MeshcastError, ValueError):
    """Malformed graph input: parse failure or invariant violation."""


class UnknownNodeError(MeshcastError, KeyError):
    """A node identifier does not exist in the graph."""

    def __str__(self) -> str:  # KeyError quotes its payload by default
        return self.args[0] if self.args else ""


class UnknownFunctionError(MeshcastError, KeyError):
    """A requested function label is not hosted by any node."""

    def __str__(self) -> str:
        return self.args[0] if self.args else ""


class UnreachableError(MeshcastError):
    """A required connection does not exist in the graph."""


class BudgetExceededError(MeshcastError):
    """The exact path search ran out of its label budget.

    ``best`` carries the best (interference, node sequence) candidate found
    before the budget ran out, or None if the target was never reached.
    """

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best


class ConfigError(MeshcastError, ValueError):
    """Invalid experiment or solver configuration."""
