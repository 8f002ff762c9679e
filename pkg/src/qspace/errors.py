"""Exception hierarchy shared by all qspace modules."""


class QSpaceError(Exception):
    """Base class for every error raised by qspace."""


class InvalidParameter(QSpaceError, ValueError):
    pass


class UnsupportedField(QSpaceError, ValueError):
    pass


class InvalidElement(QSpaceError, ValueError):
    pass


class FieldDivisionByZero(QSpaceError, ZeroDivisionError):
    pass


class InvalidInput(QSpaceError, ValueError):
    pass


class DimensionMismatch(QSpaceError, ValueError):
    pass


class EnumerationTooLarge(QSpaceError, RuntimeError):
    pass


class InvalidConfiguration(QSpaceError, ValueError):
    pass


class PreconditionViolated(QSpaceError, ValueError):
    pass


class InvalidIndex(QSpaceError, IndexError):
    pass


class AmbientTooSmall(QSpaceError, ValueError):
    pass


class InvariantViolation(QSpaceError, AssertionError):
    """A proven statement failed to check out; always an implementation bug."""
