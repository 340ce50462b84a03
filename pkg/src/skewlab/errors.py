"""Exception types shared across the package."""


class UsageError(ValueError):
    """Caller passed arguments that violate an operation's contract."""


class ConstructionError(ValueError):
    """A spec or system cannot be built from the given ingredients."""


class EmptySetError(RuntimeError):
    """A grid-set computation produced an empty set.

    Raised instead of returning an empty GridSet: the hyperspace here is of
    non-empty closed sets, and an empty result always signals a bad window
    or resolution choice. The message carries the diagnostic hint.
    """


class InconclusiveError(RuntimeError):
    """The coboundary graph test hit contradictory bins with bounded sums.

    Carries the offending bin so the caller can inspect the two clashing
    orbit visits.
    """

    def __init__(self, message, bin_index=None, values=None):
        super().__init__(message)
        self.bin_index = bin_index
        self.values = values
