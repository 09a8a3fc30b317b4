"""Exception hierarchy shared by every module."""


class ToeplitzCompletionError(Exception):
    pass


class PoleEvaluation(ToeplitzCompletionError, ValueError):
    pass


class NotDivisible(ToeplitzCompletionError, ValueError):
    pass


class InvalidZero(ToeplitzCompletionError, ValueError):
    pass


class ZeroSymbol(ToeplitzCompletionError, ValueError):
    pass


class GrammarOverflow(ToeplitzCompletionError, ArithmeticError):
    pass


class BufferTooSmall(ToeplitzCompletionError, ArithmeticError):
    pass


class DegenerateDeterminant(ToeplitzCompletionError, ValueError):
    pass


class CaseHypothesisViolated(ToeplitzCompletionError, ValueError):
    pass


class InvalidFamilyParameters(ToeplitzCompletionError, ValueError):
    pass


class GrammarParse(ToeplitzCompletionError, ValueError):
    pass


class ParseError(ToeplitzCompletionError, ValueError):
    pass
