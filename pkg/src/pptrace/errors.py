"""Exception hierarchy shared by all pptrace modules."""


class PPTraceError(Exception):
    """Base class for every error raised by this package."""


class ModulusError(PPTraceError, ValueError):
    """Base modulus is reducible or has the wrong degree."""


class RangeError(PPTraceError, ValueError):
    """Extension degree or element encoding outside the supported range."""


class DivisionByZero(PPTraceError, ZeroDivisionError):
    pass


class NotApplicable(PPTraceError, ValueError):
    """The family is only defined under a field condition (e.g. odd ``m``) that fails."""


class ZeroArgument(PPTraceError, ValueError):
    pass


class BadAlpha(PPTraceError, ValueError):
    """The ``alpha`` of a trace-linear map does not have relative trace 1."""


class DegeneratePair(PPTraceError, ValueError):
    """``beta`` is a subfield multiple of ``delta``."""


class NoInverse(PPTraceError, ArithmeticError):
    """3 is not invertible modulo ``2**m - 1`` (``m`` even)."""


class NotAPermutation(PPTraceError, ValueError):
    pass


class TooLarge(PPTraceError, ValueError):
    """Exhaustive operation requested on a field above its size guard."""


class NotABijection(PPTraceError, ValueError):
    pass
