"""
Error types shared by the components app.

The CLI maps them onto exit codes and the HTTP mirror onto status codes,
so callers can tell a malformed input from a mathematical precondition
from plain bad luck in the randomized engine.
"""


class ComponentError(Exception):
    """Base class for everything this app raises on purpose."""

    exit_code = 1
    http_status = 500


class MultisegmentSyntaxError(ComponentError):
    """Raised when multisegment text is malformed or out of bounds."""

    exit_code = 2
    http_status = 400


class PreconditionError(ComponentError):
    """Raised when an operation is called outside its mathematical domain."""

    exit_code = 4
    http_status = 422


class EnumerationLimitError(PreconditionError):
    """Raised when an enumeration or exhaustive scan would exceed its guard."""


class InconsistentProfileError(PreconditionError):
    """Raised when a rank table implies a negative segment multiplicity."""


class NoMajorityError(ComponentError):
    """
    Raised when randomized trials fail to agree.

    Usually bad luck or a field that is too small; retrying with more
    trials or a larger prime is the expected remedy.
    """

    exit_code = 3
    http_status = 503

    def __init__(self, message: str, outcomes=None):
        super().__init__(message)
        self.outcomes = list(outcomes or [])
