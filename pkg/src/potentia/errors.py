"""Exception types shared across the package."""


class PotentiaError(Exception):
    """Base class for all errors raised by potentia."""


class DomainError(PotentiaError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class SingularityError(PotentiaError, ValueError):
    """Evaluation hit (or came within round-off of) a singular point."""


class TruncationError(PotentiaError, ValueError):
    """Truncation index too small for the tail bound to be valid."""


class MonotonicityError(PotentiaError, ValueError):
    """Probe values violate a required monotonicity."""


class InsufficientDataError(PotentiaError, ValueError):
    """Not enough usable samples to fit a model."""


class StepCapExceeded(PotentiaError, RuntimeError):
    """A simulated path ran past the hard step cap.

    ``partial`` holds statistics over the paths that did finish.
    """

    def __init__(self, message, path_index=None, partial=None):
        super().__init__(message)
        self.path_index = path_index
        self.partial = partial
