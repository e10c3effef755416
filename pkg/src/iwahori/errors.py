"""Exception types shared by every module."""


class IwahoriError(Exception):
    """Base class for all library errors."""


class DivisionByZero(IwahoriError, ZeroDivisionError):
    pass


class IndeterminateValuation(IwahoriError, ArithmeticError):
    """A valuation or valuation comparison cannot be decided at the available precision."""


class PrecisionExhausted(IwahoriError, ArithmeticError):
    pass


class InvalidTwist(IwahoriError, ValueError):
    pass


class FieldMismatch(IwahoriError, ValueError):
    pass


class SeriesSyntaxError(IwahoriError, ValueError):
    def __init__(self, message, text="", pos=0):
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        self.line = line
        self.column = col
        self.message = message
        super().__init__(f"{message} at line {line}, column {col}")


class InconsistentTuples(IwahoriError, ArithmeticError):
    pass


class NotMonomial(IwahoriError, ValueError):
    pass


class TooLarge(IwahoriError, ValueError):
    pass


class NotReducible(IwahoriError, ValueError):
    pass


class Infeasible(IwahoriError, RuntimeError):
    pass
