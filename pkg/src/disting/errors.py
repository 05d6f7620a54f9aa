"""Exception types shared across the package."""


class DistingError(Exception):
    """Base class for all package-specific errors."""


class Graph6Error(DistingError):
    """Malformed or unsupported graph6 data."""


class AutCapExceededError(DistingError):
    """The automorphism group is larger than the configured cap."""


class CanonicalBoundExceededError(DistingError):
    """Canonical form requested for a graph above the size bound."""


class SearchBudgetExceededError(DistingError):
    """The solver exhausted its node budget before reaching an answer."""


class UndefinedIndexError(DistingError):
    """D' is undefined: some non-trivial automorphism acts trivially on edges."""


class ConstructionError(DistingError):
    """A proof construction was invoked with an invalid base or site."""
