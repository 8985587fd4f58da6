"""Exception hierarchy.

Every error raised deliberately by the package derives from ``DomainError``;
the CLI maps those to exit code 1.
"""


class DomainError(Exception):
    """Base class for invalid mathematical input."""


class UnknownType(DomainError):
    pass


class RankOutOfRange(DomainError):
    pass


class NegativeN(DomainError):
    pass


class OutOfRange(DomainError):
    pass


class DivZero(DomainError, ZeroDivisionError):
    pass


class NotPolynomial(DomainError):
    """A rational function was expected to be a Laurent polynomial but is not."""


class TooLong(DomainError):
    pass


class NotReduced(DomainError):
    pass


class NotBruhatComparable(DomainError):
    pass


class NotExtending(DomainError):
    pass


class NotTotal(DomainError):
    pass


class InvalidCharge(DomainError):
    pass


class ZeroElement(DomainError):
    pass


class NotDominant(DomainError):
    pass


class HypothesisNotMet(DomainError):
    pass


class NotQCommuting(DomainError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class IndexOutOfRange(DomainError):
    pass


class NotPrefixPresentation(DomainError):
    pass


class DescentViolation(DomainError):
    pass
