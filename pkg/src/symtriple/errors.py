"""Exception types shared across the package."""


class SymtripleError(Exception):
    """Base class for all library errors."""


class DivisionByZero(SymtripleError, ZeroDivisionError):
    pass


class SymbolMismatch(SymtripleError):
    pass


class PoleAtPoint(SymtripleError):
    pass


class OrderMismatch(SymtripleError):
    pass


class NonInvertibleConstantTerm(SymtripleError):
    pass


class NonzeroInnerConstant(SymtripleError):
    pass


class BadConstantTerm(SymtripleError):
    pass


class NotReversible(SymtripleError):
    pass


class InsufficientCoefficients(SymtripleError):
    pass


class UnstretchPrecondition(SymtripleError):
    pass


class IndexOutOfRange(SymtripleError, IndexError):
    pass


class UnknownSequence(SymtripleError, KeyError):
    pass


class UnknownTriple(SymtripleError, KeyError):
    pass


class UnknownSuite(SymtripleError, KeyError):
    pass


class BadParams(SymtripleError, ValueError):
    pass


class ParseError(SymtripleError, ValueError):
    pass
