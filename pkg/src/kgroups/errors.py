"""Exception hierarchy shared by all modules."""


class KGroupsError(Exception):
    """Base class for every error raised by this package."""


class NotPrime(KGroupsError, ValueError):
    pass


class Reducible(KGroupsError, ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DivisionByZero(KGroupsError, ZeroDivisionError):
    pass


class FieldMismatch(KGroupsError, TypeError):
    pass


class NoEmbedding(KGroupsError, ValueError):
    pass


class FieldTooLarge(KGroupsError, ValueError):
    pass


class ZeroElement(KGroupsError, ValueError):
    pass


class PoleAtPlace(KGroupsError, ValueError):
    pass


class DegreeOverflow(KGroupsError):
    """A place or residue field beyond the configured degree bound was needed."""

    def __init__(self, message, degree=None, bound=None):
        super().__init__(message)
        self.degree = degree
        self.bound = bound


class InfiniteFactor(KGroupsError, ValueError):
    pass


class GroupMismatch(KGroupsError, TypeError):
    pass


class ZeroEntry(KGroupsError, ValueError):
    pass


class NotIntegral(KGroupsError, ValueError):
    pass


class ConfigError(KGroupsError, ValueError):
    pass


class UnsupportedShape(KGroupsError, ValueError):
    pass


class ParseError(KGroupsError, ValueError):
    pass
