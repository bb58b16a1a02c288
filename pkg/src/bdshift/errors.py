"""Exception hierarchy shared by every module."""


class BDSError(Exception):
    """Base class for all errors raised by bdshift."""


class InputError(BDSError, ValueError):
    """A caller supplied a word, spec or parameter outside the operation's domain."""


class NonCanonicalError(InputError):
    """An operation that requires a canonical function received one that is not."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class BudgetExceeded(BDSError):
    """An enumeration hit its node budget.

    ``partial`` carries whatever complete results were obtained before the
    limit was reached (for counts, every level that finished).
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class UncertifiedOrbit(BDSError):
    """A periodic orbit could be neither certified nor refuted."""

    def __init__(self, message, orbits=()):
        super().__init__(message)
        self.orbits = list(orbits)


class InvariantViolation(BDSError, AssertionError):
    """A result that a theorem guarantees failed its post-check."""
