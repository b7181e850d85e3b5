"""Exception hierarchy shared by all engines."""


class QKError(Exception):
    """Base class for errors raised by qkwhitney."""


class DimensionError(QKError, ValueError):
    """Operands live over different numbers of parameters or variables."""


class DomainError(QKError, ValueError):
    """A value lies outside the domain of an operation."""


class ResourceError(QKError, RuntimeError):
    """A step budget was exhausted."""


class InfiniteDimensional(QKError):
    """The quotient ring is not finite dimensional."""


class CapExceeded(QKError):
    """The quotient has more standard monomials than the permitted cap."""


class NonUnitConstantTerm(QKError, ValueError):
    """A truncated series was inverted but its constant term is not a unit."""


class ShapeError(QKError, ValueError):
    """Invalid flag shape."""


class NotStrictlyIncreasing(ShapeError):
    pass


class OutOfRange(ShapeError):
    pass


class MismatchedClassicalLimit(QKError, ValueError):
    """Quantum generators do not reduce to the classical generators at q = 0."""


class NotABasis(QKError, ValueError):
    pass


class SingularSystem(QKError, ValueError):
    pass


class SingularDiagonal(QKError, ValueError):
    pass


class QVariablePresent(QKError, ValueError):
    pass


class CertificateFailure(QKError):
    """A freeness certificate found a counterexample.

    The offending data is kept on ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ParseError(QKError, ValueError):
    """Lexical or syntactic error; ``offset`` is the byte position."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class UnknownVariable(ParseError):
    pass
