"""Exception hierarchy shared by every module of the package."""


class HeckeRaiseError(Exception):
    """Base class for all package errors."""


# exact algebra
class NotSublattice(HeckeRaiseError):
    pass


class NonCommuting(HeckeRaiseError):
    def __init__(self, first, second):
        super().__init__(f"operators {first!r} and {second!r} do not commute")
        self.pair = (first, second)


# models
class ParseError(HeckeRaiseError):
    pass


class ModelError(ParseError):
    """Raised when a double-coset model is structurally malformed (parse time)."""


class ValidationFailed(HeckeRaiseError):
    def __init__(self, report):
        super().__init__("model failed validation")
        self.report = report


# level raising
class BlockMismatch(HeckeRaiseError):
    pass


class ZeroE(HeckeRaiseError):
    pass


class MZero(HeckeRaiseError):
    """The eigenform is invariant under the group generated by K and K'."""


class EllDividesIndex(HeckeRaiseError):
    pass


class NoCentralOps(HeckeRaiseError):
    pass


class AbelianInput(HeckeRaiseError):
    pass


class NotRankOne(HeckeRaiseError):
    pass


# eigensystems
class NotReduced(HeckeRaiseError):
    pass


class NotOccurring(HeckeRaiseError):
    pass


# local representations
class AmbiguousHalfPower(HeckeRaiseError):
    pass


class BadParams(HeckeRaiseError):
    pass


class SuiteFailure(HeckeRaiseError):
    pass
