"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`WeylForgeError`; the CLI maps :class:`InputError` subclasses to
exit status 2 and :class:`ResourceCapError` to exit status 3.
"""


class WeylForgeError(Exception):
    pass


class InputError(WeylForgeError):
    """Malformed or mathematically invalid input data."""


class NonCartan(InputError):
    pass


class TypeMismatch(InputError):
    pass


class UnsupportedType(InputError):
    pass


class IndexOutOfRange(InputError):
    pass


class NotCofinite(InputError):
    pass


class UnsupportedPresentation(InputError):
    pass


class NotCoprime(InputError):
    pass


class NotDominant(InputError):
    pass


class SharedPoint(InputError):
    pass


class DuplicatePoint(InputError):
    pass


class TableMismatch(InputError):
    pass


class IncompatibleCoefficients(InputError):
    pass


class AlgebraMismatch(InputError):
    pass


class OrderViolation(InputError):
    pass


class WeightOverflow(WeylForgeError):
    """An action left the truncated range of weights that was computed."""


class IntegrabilityAuditFailed(WeylForgeError):
    pass


class ResourceCapError(WeylForgeError):
    """A weight space or coefficient algebra exceeded a configured cap."""
