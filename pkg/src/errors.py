"""
Exception hierarchy. Argument-shaped failures also subclass ValueError.
"""


class CoamoebaError(Exception):
    """Base class for every error raised by the engine."""


class ConfigError(CoamoebaError, ValueError):
    pass


class CompositionNotZero(CoamoebaError, ValueError):
    pass


class NotInSubspace(CoamoebaError, ValueError):
    pass


class InducedProductIllDefined(CoamoebaError):
    pass


class UnknownObject(CoamoebaError, KeyError):
    pass


class NotComposable(CoamoebaError, ValueError):
    pass


class NotClosed(CoamoebaError, ValueError):
    pass


class MaurerCartanViolation(CoamoebaError, ValueError):
    pass


class WindowTooSmall(CoamoebaError, ValueError):
    pass


class SignInconsistency(CoamoebaError):
    pass


class NotFiniteIndex(CoamoebaError, ValueError):
    pass


class UnsupportedDimension(CoamoebaError, ValueError):
    pass
