"""Partition generating functions and numeric checks of congruences and identities.

Two backends: exact integer series (authoritative) and series reduced mod M
throughout, for ranges where exact coefficients get unwieldy.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Optional

from .dissector import v3
from .report import MAX_VIOLATIONS, CheckReport, combine, compare_series
from .series import QSeries, eta_quotient, qs_eta

B547 = 2135474526556068875092854278074796547960
B547_FACTORS = ((2, 3), (3, 7), (5, 1), (41, 1), (61, 1), (151, 1), (11909, 1),
                (5427748132276664632973303, 1))

POLY20_MOD9 = (1, 7, 1, 3, 3, 3, 6, 6, 6, 7, 4, 7, 6, 6, 6, 3, 3, 3, 1, 7, 1)


@lru_cache(maxsize=16)
def gen_p(precision: int, modulus: Optional[int] = None) -> QSeries:
    """sum p(n) q^n = 1/(q;q)."""
    return qs_eta(1, 1, precision, modulus).inverse()


@lru_cache(maxsize=16)
def gen_a(precision: int, modulus: Optional[int] = None) -> QSeries:
    """Cubic partitions: 1/((q;q)(q^2;q^2))."""
    return eta_quotient({1: 1, 2: 1}, precision, modulus).inverse()


@lru_cache(maxsize=16)
def gen_b(precision: int, modulus: Optional[int] = None) -> QSeries:
    """Cubic partition pairs: 1/((q;q)^2 (q^2;q^2)^2)."""
    return (eta_quotient({1: 1, 2: 1}, precision, modulus) ** 2).inverse()


def check_progression(series: QSeries, m: int, r: int, modulus: int, limit: int,
                      claim: Optional[str] = None) -> CheckReport:
    """Coefficient of q^(mn+r) is 0 mod ``modulus`` for every mn + r < limit."""
    if limit > series.precision:
        raise ValueError(f"limit {limit} exceeds series precision {series.precision}")
    if series.modulus is not None and series.modulus % modulus:
        raise ValueError(f"a mod {series.modulus} series cannot decide congruences mod {modulus}")
    coeffs = series.integer_coeffs(0, limit)
    viol = []
    count = 0
    for n, c in enumerate(coeffs[r::m]):
        count += 1
        res = c % modulus
        if res and len(viol) < MAX_VIOLATIONS:
            viol.append((n, res))
    return CheckReport(claim or f"{m}n+{r} mod {modulus}", modulus, (m, r), count, tuple(viol))


def check_congruence_identity(lhs: QSeries, rhs: QSeries, modulus: int, limit: int,
                              claim: str = "identity") -> CheckReport:
    """lhs = rhs (mod ``modulus``) coefficientwise on [0, limit)."""
    return compare_series(claim, lhs, rhs, limit, modulus, start=0)


def chan_rhs(precision: int, modulus: Optional[int] = None) -> QSeries:
    """3 (q^3;q^3)^3 (q^6;q^6)^3 / ((q;q)^4 (q^2;q^2)^4)."""
    return eta_quotient({1: -4, 2: -4, 3: 3, 6: 3}, precision, modulus) * 3


def verify_chan_identity(limit: int) -> CheckReport:
    """sum a(3n+2) q^n equals an eta quotient exactly; hence a(3n+2) = 0 mod 3."""
    a = gen_a(3 * limit + 2)
    lhs = a.extract(3, 2)
    exact = compare_series("chan-identity", lhs, chan_rhs(limit), limit, start=0)
    mod3 = check_progression(a, 3, 2, 3, 3 * limit, claim="a(3n+2) mod 3")
    return combine("chan-identity", [exact, mod3])


def lin2_rhs(precision: int, modulus: Optional[int] = None) -> QSeries:
    """9 (q^2;q^2)(q^3;q^3)^2 / (q^6;q^6)."""
    return eta_quotient({2: 1, 3: 2, 6: -1}, precision, modulus) * 9


def lin3_rhs(precision: int, modulus: Optional[int] = None) -> QSeries:
    """36 (q;q)(q^6;q^6)^2 / (q^3;q^3)."""
    return eta_quotient({1: 1, 3: -1, 6: 2}, precision, modulus) * 36


def verify_lin_identity(r: int, terms: int, modulus: Optional[int] = 81) -> CheckReport:
    """sum b(81n + r) q^n against an eta quotient mod 81, for r = 7 or 34.

    ``modulus`` picks the expansion backend: None runs exact arithmetic.
    """
    rhs_of = {7: lin2_rhs, 34: lin3_rhs}
    if r not in rhs_of:
        raise ValueError("r must be 7 or 34")
    b = gen_b(81 * terms + r, modulus)
    claim = "th1.2-lin2" if r == 7 else "th1.2-lin3"
    rep = check_congruence_identity(b.extract(81, r), rhs_of[r](terms, modulus), 81, terms, claim)
    return CheckReport(claim, 81, (81, r), rep.checked, rep.violations)


def verify_b547() -> CheckReport:
    """Value of b(547), its 3-adic valuation (exactly 7) and the published factorization."""
    value = gen_b(548).integer_coeffs(547, 548)[0]
    checks = []
    checks.append(CheckReport("b547-value", 0, (1, 547), 1,
                              () if value == B547 else ((0, value),)))
    val = v3(value) if value else None
    checks.append(CheckReport("b547-v3", 3 ** 8, (1, 547), 1,
                              () if val == 7 else ((0, value % 3 ** 8),)))
    product = math.prod(p ** e for p, e in B547_FACTORS)
    checks.append(CheckReport("b547-factors", 0, (1, 547), 1,
                              () if product == value else ((0, product - value),)))
    return combine("b547", checks, 3 ** 7, (1, 547))


def lin_family_index(alpha: int, k: int, n: int) -> int:
    """81 (7^(2 alpha + 1)(7n + k) + (7^(2 alpha + 2) - 1)/12) + 7."""
    return 81 * (7 ** (2 * alpha + 1) * (7 * n + k) + (7 ** (2 * alpha + 2) - 1) // 12) + 7


def verify_lin_family_alpha0(n_limit: int, modulus: Optional[int] = 27) -> CheckReport:
    """b(81(7(7n + k) + 4) + 7) = 0 mod 27 for k = 1..6 and n < n_limit.

    ``modulus`` picks the backend (27 by default; None computes exactly).
    """
    indices = [lin_family_index(0, k, n) for k in range(1, 7) for n in range(n_limit)]
    b = gen_b(max(indices) + 1, modulus)
    coeffs = b.integer_coeffs(0, max(indices) + 1)
    viol = []
    for i in sorted(indices):
        res = coeffs[i] % 27
        if res and len(viol) < MAX_VIOLATIONS:
            viol.append((i, res))
    return CheckReport("lin-family-27", 27, "identity", len(indices), tuple(viol))


def verify_poly_1_minus_x_20() -> CheckReport:
    """(1 - x)^20 mod 9 against the published coefficient list."""
    got = [(-1) ** i * math.comb(20, i) % 9 for i in range(21)]
    viol = tuple((i, g) for i, (g, want) in enumerate(zip(got, POLY20_MOD9)) if g != want)
    return CheckReport("poly20", 9, "identity", 21, viol[:MAX_VIOLATIONS])
