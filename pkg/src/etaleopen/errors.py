"""Exception types raised across the package."""


class EtaleOpenError(Exception):
    """Base class for all library errors."""


class CompositeModulus(EtaleOpenError, ValueError):
    pass


class UnsupportedCharacteristic(EtaleOpenError, ValueError):
    pass


class DegreeTooLarge(EtaleOpenError, ValueError):
    pass


class NotASubfield(EtaleOpenError, ValueError):
    pass


class ZeroPolynomial(EtaleOpenError, ValueError):
    pass


class ParseError(EtaleOpenError, ValueError):
    pass


class NotMonic(EtaleOpenError, ValueError):
    pass


class UnsupportedCoefficientField(EtaleOpenError, TypeError):
    pass


class ZeroScale(EtaleOpenError, ValueError):
    pass


class RingMismatch(EtaleOpenError, ValueError):
    pass


class BudgetExceeded(EtaleOpenError, RuntimeError):
    pass


class BadDenominator(EtaleOpenError, ValueError):
    pass


class NotAMember(EtaleOpenError, ValueError):
    pass


class BasisMismatch(EtaleOpenError, ValueError):
    pass


class QuadraticallyClosed(EtaleOpenError, ValueError):
    pass


class ElementNotInField(EtaleOpenError, ValueError):
    pass


class DegenerateBetas(EtaleOpenError, ValueError):
    pass


class TowerValuationMismatch(EtaleOpenError, ValueError):
    pass


class SearchExhausted(EtaleOpenError, RuntimeError):
    pass


class PreconditionFailed(EtaleOpenError, ValueError):
    pass
