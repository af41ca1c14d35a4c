"""Shared exception types."""


class MalformedAlcove(ValueError):
    """An alcove datum violates the adjacency or wraparound invariants."""


class DomainError(ValueError):
    """Input is structurally fine but outside an operation's domain."""


class ComputationError(RuntimeError):
    """An internal consistency check failed mid-computation."""


class ChartTimeout(RuntimeError):
    """A per-chart verification exceeded its wall-clock budget."""
