"""Exception types shared across the package."""


class KrthinError(Exception):
    """Base class for all package errors."""


class InvalidCode(KrthinError, ValueError):
    pass


class InvalidParameter(KrthinError, ValueError):
    pass


class MalformedDiagram(KrthinError, ValueError):
    pass


class CrossingNotFound(KrthinError, IndexError):
    pass


class SecondSingularCrossing(KrthinError, ValueError):
    pass


class ResourceLimit(KrthinError, RuntimeError):
    pass


class InternalInconsistency(KrthinError, AssertionError):
    pass


class PhaseMismatch(InternalInconsistency):
    pass


class NoAdmissibleSigma(InternalInconsistency):
    pass


class FractionalRemainder(InternalInconsistency):
    pass


class ParityViolation(InternalInconsistency):
    pass


class ZeroDeterminant(KrthinError, ValueError):
    pass


class NotAlternating(KrthinError, ValueError):
    pass


class NotAKnot(KrthinError, ValueError):
    pass


class DiagramsNotRelated(KrthinError, ValueError):
    pass


class DenominatorVanishes(KrthinError, ZeroDivisionError):
    pass


class NonIntegralQuotient(InternalInconsistency, ArithmeticError):
    pass
