"""Exception types shared across the package."""


class BohrError(Exception):
    """Base class for all package errors."""


class DomainError(BohrError, ValueError):
    """An argument lies outside the range where the quantity is defined.

    For radius settings the message names the violated hypothesis, e.g.
    ``"requires R2 >= 2*delta"``.
    """


class PreconditionError(BohrError, ValueError):
    """A structural precondition on a series is violated (e.g. phi(0) != 0)."""


class BracketError(BohrError, ValueError):
    """The predicate passed to bisection does not change value on the bracket."""


class UnsupportedFamilyError(BohrError, ValueError):
    """The requested closed form is not available for this family kind."""


class VerificationError(BohrError, AssertionError):
    """A numerical sanity assertion on computed data failed."""


class FormatError(BohrError, ValueError):
    """A coefficient document could not be parsed."""
