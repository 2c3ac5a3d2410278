"""Exception hierarchy shared by every qcalc module."""


class QCalcError(Exception):
    """Base class for all library errors."""


# points and frames

class DomainError(QCalcError):
    """A point lies outside the frame's domain description."""


class ZeroTension(DomainError):
    """theta(tau(p), sigma(p)) vanishes, so the divided difference is undefined."""


class EmptySamples(QCalcError):
    pass


class NotHomogeneous(QCalcError):
    pass


class DegenerateSample(QCalcError):
    pass


class InvalidParams(QCalcError):
    pass


class CommutationFailure(QCalcError):
    pass


class NotInKernel(QCalcError):
    """A function expected to be a D-constant is not annihilated by D."""


# finite operator algebra

class BadShape(QCalcError):
    pass


class NotRightInvertible(QCalcError):
    pass


class NotARightInverse(QCalcError):
    pass


class NotAnInitialOperator(QCalcError):
    pass


class DimensionOverflow(QCalcError):
    pass


class NotAPolynomial(QCalcError):
    pass


class InvalidKernelBasis(QCalcError):
    pass


class NotADirectSum(QCalcError):
    pass


class InvarianceFailure(QCalcError):
    pass


# basis polynomials and expansions

class ZeroFactor(QCalcError):
    pass


class NoInverse(QCalcError):
    pass


class InsufficientSamples(QCalcError):
    pass


class DegreeExceeded(QCalcError):
    pass


class MultiLabelUnsupported(QCalcError):
    pass


class GridDegenerate(QCalcError):
    pass


class GridExhausted(QCalcError):
    pass


class ParseError(QCalcError):
    pass
