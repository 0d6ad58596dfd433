"""Exception hierarchy shared by every finalg module."""


class FinalgError(Exception):
    """Base class for all library errors."""


# fields
class CompositeP(FinalgError, ValueError):
    pass


class ReducibleModulus(FinalgError, ValueError):
    pass


class NoPthRoot(FinalgError, ArithmeticError):
    pass


# linalg
class NoSolution(FinalgError, ArithmeticError):
    pass


class DimensionMismatch(FinalgError, ValueError):
    pass


# algebra
class NotAssociative(FinalgError, ValueError):
    pass


class NotUnital(FinalgError, ValueError):
    pass


class NotAGroup(FinalgError, ValueError):
    pass


class NotAnIdeal(FinalgError, ValueError):
    pass


class NotAUnit(FinalgError, ArithmeticError):
    pass


class TooLarge(FinalgError):
    """An exhaustive computation would exceed its enumeration bound."""


class UnsupportedField(FinalgError):
    pass


class ImperfectField(UnsupportedField):
    pass


# unit groups
class NotNil(FinalgError, ValueError):
    pass


class WordSyntaxError(FinalgError, ValueError):
    pass


# restricted Lie algebras
class NotAntisymmetric(FinalgError, ValueError):
    pass


class JacobiFails(FinalgError, ValueError):
    pass


class NotRestricted(FinalgError, ValueError):
    pass


class StraighteningInconsistent(FinalgError):
    pass


class InternalInconsistency(FinalgError):
    pass


class NotInL(FinalgError, ValueError):
    pass


class PNotSubspace(FinalgError):
    pass


class NotRestrictedIdeal(FinalgError, ValueError):
    pass


class HypothesisFailed(FinalgError):
    def __init__(self, hypothesis: str, message: str = ""):
        super().__init__(message or hypothesis)
        self.hypothesis = hypothesis


# cli
class UnknownScenario(FinalgError, KeyError):
    pass


class BadInput(FinalgError, ValueError):
    pass
