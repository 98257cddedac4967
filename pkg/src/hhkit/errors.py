"""Exception types raised across the package."""


class HHError(ValueError):
    """Base class for all input and consistency errors."""


class ZeroDivisor(HHError):
    pass


class BothZero(HHError):
    pass


class NotMonic(HHError):
    pass


class NotAField(HHError):
    pass


class ParseError(HHError):
    pass


class BadStructure(HHError):
    """Structure constants fail associativity or the unit law."""


class BadBimodule(HHError):
    pass


class NotIdempotent(HHError):
    pass


class NotAnIdeal(HHError):
    pass


class NotASubset(HHError):
    pass


class NotASubcomplex(HHError):
    pass


class NotAnOrderIdeal(HHError):
    pass


class NotACocycle(HHError):
    pass


class NotABimoduleMap(HHError):
    pass


class UnknownVertex(HHError):
    pass


class InfiniteDimensional(HHError):
    pass


class MalformedPath(HHError):
    pass


class BadParameters(HHError):
    pass


class DimensionCap(HHError):
    pass


class PresentationMismatch(HHError):
    pass


class NotHomological(HHError):
    pass


class FlatnessNotEstablished(HHError):
    pass
