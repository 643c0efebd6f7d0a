"""Shared exception types."""


class GraphFormatError(ValueError):
    """Malformed graph / set-cover / vector input."""


class BudgetExceededError(RuntimeError):
    """An enumeration would exceed the configured work budget."""


class InfeasibleError(RuntimeError):
    """No finite covering radius exists (fewer centers than components)."""


class EmptyRegionError(RuntimeError):
    """Asked for the farthest vertex of an empty region.

    Callers treat this as "the region is already fully covered".
    """


class InvalidCoverError(ValueError):
    """A claimed set cover leaves some element uncovered."""


class DeciderFailedError(RuntimeError):
    """The randomized decision procedure failed at the search upper bound."""
