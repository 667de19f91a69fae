"""Exception types raised across the package."""


class QSeriesError(Exception):
    """Base class for all errors raised by qdissect."""


class QueryBeyondPrecision(QSeriesError, IndexError):
    """A coefficient was requested at or beyond the known precision."""


class ZeroLeadingCoefficient(QSeriesError, ZeroDivisionError):
    """Inversion of a series whose leading coefficient is zero (or not a unit mod M)."""


class NonInvertibleDenominator(QSeriesError, ArithmeticError):
    """A rational coefficient cannot be reduced modulo M."""

    def __init__(self, exponent, denominator, modulus):
        self.exponent = exponent
        self.denominator = denominator
        self.modulus = modulus
        where = "" if exponent is None else f" at exponent {exponent}"
        super().__init__(
            f"denominator {denominator}{where} is not invertible modulo {modulus}")


class InadmissibleRepresentation(QSeriesError, ValueError):
    """The representation satisfies neither hypothesis of the 3-dissection step."""


class EmptyRepresentation(QSeriesError, ValueError):
    """An operation needs at least one term in the representation."""


class UnknownClaim(QSeriesError, KeyError):
    """A claim id is not present in the registry."""
