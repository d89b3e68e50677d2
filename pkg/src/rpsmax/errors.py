"""Exception hierarchy shared by the library and the command line."""


class RPSError(Exception):
    """Base class for all errors raised by rpsmax."""


class DomainError(RPSError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class CapacityError(RPSError):
    """Materializing the requested object would exceed the configured cap."""


class ValidationError(RPSError, ValueError):
    """A mass assignment or input document violates its invariants.

    ``violations`` holds one human-readable line per broken invariant.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations) or "invalid input")


class PreconditionError(RPSError, ValueError):
    """An operation was called on input outside its precondition."""
