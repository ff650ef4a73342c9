"""Exception types shared across the package.

Checkers that report mathematical *violations* return report objects instead
of raising; exceptions are reserved for unusable inputs and environment
limits.
"""


class ZLocalError(Exception):
    """Base class for all package errors."""


class DivisionByZero(ZLocalError):
    pass


class FieldMismatch(ZLocalError):
    pass


class OrderUnavailable(ZLocalError):
    """The coefficient field has no root of unity of the requested order."""


class NotAGroup(ZLocalError):
    pass


class SizeBound(ZLocalError):
    """An enumeration was asked to run beyond its configured size limit."""


class NotContained(ZLocalError):
    pass


class ShapeMismatch(ZLocalError):
    pass


class GroupMismatch(ZLocalError):
    pass


class NotSemisimpleField(ZLocalError):
    """Semisimple-only machinery was invoked over a modular field."""


class NonSplit(ZLocalError):
    """An endomorphism algebra failed to split over the chosen field."""


class Inconsistent(ZLocalError):
    """Forced propagation of compatibility data contradicted itself."""


class NotScalar(ZLocalError):
    pass


class InvalidData(ZLocalError):
    pass


class NotInvertible(ZLocalError):
    pass


class NotRigidFrobenius(ZLocalError):
    pass


class InternalInconsistency(ZLocalError):
    """A constructed object failed its own axiom suite; indicates a bug."""
