"""Exception hierarchy shared by every module."""


class HopfgenError(Exception):
    pass


class DivisionByZero(HopfgenError, ZeroDivisionError):
    pass


class DenominatorVanishes(DivisionByZero):
    """A specialization sends a denominator to zero."""


class SingularSystem(HopfgenError):
    pass


class ExprSyntaxError(HopfgenError, ValueError):
    def __init__(self, message, text="", pos=0):
        self.text = text
        self.pos = pos
        where = f" at position {pos}" if text else ""
        super().__init__(f"{message}{where}")


class UnknownVariable(HopfgenError, ValueError):
    pass


class MalformedTable(HopfgenError, ValueError):
    pass


class UnknownBuiltin(HopfgenError, ValueError):
    pass


class BadParam(HopfgenError, ValueError):
    pass


class BadIndex(HopfgenError, ValueError):
    pass


class BadPartition(HopfgenError, ValueError):
    pass


class NotConvInvertible(HopfgenError):
    pass


class OneSidedOnly(HopfgenError):
    """Left and right convolution inverses disagree (internal error)."""


class WrongHopf(HopfgenError, ValueError):
    pass


class NotGrouplike(HopfgenError, ValueError):
    pass


class NotTorsion(HopfgenError, ValueError):
    pass


class NotSkewPrimitive(HopfgenError, ValueError):
    pass


class MinimalPolyFails(HopfgenError, ValueError):
    pass


class BudgetExceeded(HopfgenError):
    pass
