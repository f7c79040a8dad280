"""Exception types shared by every module.

The CLI maps ``UsageError`` to exit status 2 and ``DomainError`` to 3.
"""


class MdsError(Exception):
    pass


class UsageError(MdsError, ValueError):
    """Malformed input or an operation applied outside its contract."""


class DomainError(MdsError, ArithmeticError):
    """A mathematically undefined request (inverting zero, a singular matrix...)."""


class LimitExceeded(UsageError):
    """A stream would produce more items than the configured bound."""


class CheckpointMismatch(UsageError):
    """A checkpoint was written for a different enumeration task."""
