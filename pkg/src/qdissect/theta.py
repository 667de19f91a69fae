"""Ramanujan's theta functions and the companion series used by the dissection.

Every named series is built from eta factors; phi(-q) and psi(q) are also
summed directly from their theta series and the two forms must agree.

    phi(-q) = (q;q)^2 / (q^2;q^2)            = sum (-1)^n q^(n^2)
    psi(q)  = (q^2;q^2)^2 / (q;q)            = sum_{n>=0} q^(n(n+1)/2)
    w(q)    = (q;q)(q^6;q^6)^3 / ((q^2;q^2)(q^3;q^3)^3)
    xi(q)   = 2 q w(q^3)
    kappa(q)= phi(-q)^4 / phi(-q^3)^4
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .report import CheckReport, combine, compare_series
from .series import QSeries, eta_quotient

TAGS = ("phi_minus", "psi", "w", "xi", "kappa")

_ETA_FORMS = {
    "phi_minus": {1: 2, 2: -1},
    "psi": {1: -1, 2: 2},
    "w": {1: 1, 2: -1, 3: -3, 6: 3},
}


@dataclass(frozen=True)
class ThetaName:
    """A named series evaluated at ``q^power``; ``ThetaName("phi_minus", 3)`` is phi(-q^3)."""

    tag: str
    power: int = 1

    def __post_init__(self):
        if self.tag not in TAGS:
            raise ValueError(f"unknown theta tag {self.tag!r}; expected one of {TAGS}")
        if self.power < 1:
            raise ValueError("argument power must be positive")


def phi_minus_sum(precision: int, modulus: Optional[int] = None) -> QSeries:
    """phi(-q) from the theta sum ``sum_{n in Z} (-1)^n q^(n^2)``."""
    c = [0] * precision
    n = 0
    while n * n < precision:
        c[n * n] = 1 if n == 0 else 2 * (-1) ** n
        n += 1
    return QSeries(c, 0, precision, modulus)


def psi_sum(precision: int, modulus: Optional[int] = None) -> QSeries:
    """psi(q) from ``sum_{n>=0} q^(n(n+1)/2)``."""
    c = [0] * precision
    n = 0
    while n * (n + 1) // 2 < precision:
        c[n * (n + 1) // 2] = 1
        n += 1
    return QSeries(c, 0, precision, modulus)


@lru_cache(maxsize=256)
def _base(tag: str, precision: int, modulus: Optional[int]) -> QSeries:
    if tag in _ETA_FORMS:
        s = eta_quotient(_ETA_FORMS[tag], precision, modulus)
        if tag == "phi_minus" and s != phi_minus_sum(precision, modulus):
            raise ArithmeticError("phi(-q): eta-quotient and theta-sum forms disagree")
        if tag == "psi" and s != psi_sum(precision, modulus):
            raise ArithmeticError("psi(q): eta-quotient and theta-sum forms disagree")
        return s
    if tag == "xi":
        w3 = _base("w", -(-precision // 3), modulus).substitute_power(3)
        return (w3 * 2).shift(1).truncate(precision)
    if tag == "kappa":
        phi = _base("phi_minus", precision, modulus)
        phi3 = _base("phi_minus", -(-precision // 3), modulus).substitute_power(3).truncate(precision)
        return (phi * phi3.inverse()) ** 4
    raise ValueError(tag)


def make_theta(name: ThetaName, precision: int, modulus: Optional[int] = None) -> QSeries:
    """Expansion of ``name`` to ``precision`` (exact, or mod ``modulus``)."""
    if precision < 1:
        raise ValueError("precision must be at least 1")
    m = name.power
    inner = -(-precision // m)
    return _base(name.tag, inner, modulus).substitute_power(m).truncate(precision)


def phi_minus(power: int, precision: int, modulus: Optional[int] = None) -> QSeries:
    return make_theta(ThetaName("phi_minus", power), precision, modulus)


def psi(power: int, precision: int, modulus: Optional[int] = None) -> QSeries:
    return make_theta(ThetaName("psi", power), precision, modulus)


# -- identity sides -----------------------------------------------------------
# Each *_sides function returns (lhs, rhs) known to at least ``precision``;
# the checks compare them on [0, precision).

def sides_2_3(precision: int):
    """phi(-q) = phi(-q^9) (1 - 2 q w(q^3))."""
    p = precision
    xi = make_theta(ThetaName("xi"), p)
    return phi_minus(1, p), phi_minus(9, p) * (1 - xi)


def sides_2_4(precision: int):
    """1/phi(-q) = phi(-q^9)^3 / phi(-q^3)^4 (1 + xi + xi^2)."""
    p = precision
    xi = make_theta(ThetaName("xi"), p)
    rhs = phi_minus(9, p) ** 3 * phi_minus(3, p) ** -4 * (1 + xi + xi * xi)
    return phi_minus(1, p).inverse(), rhs


def sides_2_4_product(precision: int):
    """phi(-q^9)^4 / phi(-q^3)^4 (1 - xi^3) = 1, the product of the two dissections."""
    p = precision
    xi = make_theta(ThetaName("xi"), p)
    lhs = phi_minus(9, p) ** 4 * phi_minus(3, p) ** -4 * (1 - xi ** 3)
    return lhs, QSeries.one(p)


def sides_2_5(precision: int):
    """xi^3 = 1 - phi(-q^3)^4 / phi(-q^9)^4."""
    p = precision
    xi = make_theta(ThetaName("xi"), p)
    return xi ** 3, 1 - phi_minus(3, p) ** 4 * phi_minus(9, p) ** -4


def sides_kappa(precision: int):
    """kappa(q) = 1 - 8 q w(q)^3."""
    p = precision
    w = make_theta(ThetaName("w"), p)
    return make_theta(ThetaName("kappa"), p), 1 - (w ** 3 * 8).shift(1).truncate(p)


def sides_kappa_mod3(precision: int):
    """kappa(q) = 1 - xi(q) mod 3."""
    p = precision
    return make_theta(ThetaName("kappa"), p, 3), 1 - make_theta(ThetaName("xi"), p, 3)


def sides_2_1(precision: int):
    """psi(q^3)^3 / psi(q) = (phi(-q^3)^3/phi(-q) - phi(-q)^3/phi(-q^3)) / (8q)."""
    p = precision + 1
    ph1, ph3 = phi_minus(1, p), phi_minus(3, p)
    lhs = psi(3, p) ** 3 * psi(1, p).inverse()
    bracket = ph3 ** 3 * ph1.inverse() - ph1 ** 3 * ph3.inverse()
    return lhs, (bracket / 8).shift(-1)


def sides_2_2(precision: int):
    """1/psi(q) = phi(-q^9)^3 / (8 q psi(q^3)^3 phi(-q^3)) (4 xi - 2 xi^2 + xi^3)."""
    p = precision + 1
    xi = make_theta(ThetaName("xi"), p)
    kernel = 4 * xi - 2 * xi ** 2 + xi ** 3
    front = phi_minus(9, p) ** 3 * phi_minus(3, p).inverse() * psi(3, p) ** -3
    return psi(1, p).inverse(), (front * kernel / 8).shift(-1)


# -- checks --------------------------------------------------------------------

def _check(claim: str, sides, precision: int, modulus: Optional[int] = None) -> CheckReport:
    lhs, rhs = sides(precision)
    return compare_series(claim, lhs, rhs, precision, modulus)


def check_identity_2_3(precision: int) -> CheckReport:
    return _check("id2.3", sides_2_3, precision)


def check_identity_2_4(precision: int) -> CheckReport:
    return combine("id2.4", [
        _check("id2.4", sides_2_4, precision),
        _check("id2.4-product", sides_2_4_product, precision),
    ])


def check_identity_2_5(precision: int) -> CheckReport:
    """xi^3 relation plus both kappa corollaries."""
    return combine("id2.5", [
        _check("id2.5", sides_2_5, precision),
        _check("kappa-w", sides_kappa, precision),
        _check("kappa-xi-mod3", sides_kappa_mod3, precision, 3),
    ])


def check_identity_2_2(precision: int) -> CheckReport:
    return _check("id2.2", sides_2_2, precision)


def check_identity_2_1(precision: int) -> CheckReport:
    """The psi(q^3)^3/psi(q) identity and the rewritten 1/psi(q) form derived from it."""
    return combine("id2.1", [
        _check("id2.1", sides_2_1, precision),
        check_identity_2_2(precision),
    ])
