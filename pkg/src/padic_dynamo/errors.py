"""Exception types raised across the package."""


class PadicDynamoError(Exception):
    """Base class for all errors raised by padic_dynamo."""


class NegativeValuation(PadicDynamoError, ValueError):
    pass


class BadSeed(PadicDynamoError, ValueError):
    pass


class PrecisionError(PadicDynamoError, ArithmeticError):
    """Capped-precision arithmetic cannot produce the requested digits."""


class ZeroPolynomial(PadicDynamoError, ValueError):
    pass


class TailNotDominated(PadicDynamoError):
    """The truncation of a series cannot certify the requested quantity."""


class ConstantSeries(PadicDynamoError, ValueError):
    pass


class Inconclusive(PadicDynamoError):
    pass


class NotFixed(PadicDynamoError, ValueError):
    pass


class DegenerateQuadruple(PadicDynamoError, ValueError):
    pass


class InseparableReduction(PadicDynamoError):
    pass


class BudgetExceeded(PadicDynamoError):
    pass


class CertificateFailure(PadicDynamoError):
    pass


class NotAttracting(PadicDynamoError):
    pass


class NotIndifferent(PadicDynamoError):
    pass


class PrecisionExhausted(PrecisionError):
    pass


class UnsupportedM(PadicDynamoError, ValueError):
    pass
