"""Exception types raised across the package.

Errors split into two families.  ``InputError`` subclasses signal a bad
diagram or bad user-supplied marks; ``ConventionError`` subclasses signal
that an internal invariant failed, which means a bug rather than bad input.
"""


class KFError(Exception):
    """Base class for every error raised by this package."""


class InputError(KFError):
    pass


class ConventionError(KFError):
    pass


class MalformedCode(InputError):
    pass


class NonPlanar(InputError):
    pass


class Disconnected(InputError):
    pass


class DegenerateMarking(InputError):
    pass


class Singular(InputError):
    pass


class Degenerate(InputError):
    pass


class NotNegativeDefinite(InputError):
    pass


class NonIntegralDomain(InputError):
    pass


class InconsistentHints(InputError):
    pass


class NotCharacteristic(ConventionError):
    pass


class InconsistentSystem(ConventionError):
    pass
