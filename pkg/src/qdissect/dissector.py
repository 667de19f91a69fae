"""Symbolic 3-dissection of theta-quotient representations.

A representation stands for the series

    q^alpha / psi(q)^beta * sum_i v_i phi(-q)^{s_i} phi(-q^3)^{t_i}

with all s_i congruent mod 4, all t_i congruent mod 4 and s_i + t_i constant.
One dissection step rewrites each phi(-q) power through the 3-dissections of
phi(-q) and 1/phi(-q), writes 1/psi(q) with the kernel (4 xi - 2 xi^2 + xi^3),
keeps the xi^(3j) monomials, trades xi^3 for 1 - phi(-q^3)^4/phi(-q^9)^4 and
relabels q^3 -> q.  The result represents sum_n u(3n + ell) q^n.

Inside a step every monomial is tracked as (xi power, phi(-q^3) exponent,
phi(-q^9) exponent) with an integer weight; no series arithmetic happens.
Numeric expansion (:func:`rep_to_series`) is kept separate and serves as the
oracle for the symbolic step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional

from .errors import EmptyRepresentation, InadmissibleRepresentation, NonInvertibleDenominator
from .series import QSeries, convolve
from .theta import phi_minus, psi


class Admissibility(str, enum.Enum):
    COND1 = "cond1"  # lambda = 0, s = t (mod 4)
    COND2 = "cond2"  # lambda = 2, s = t + 2 (mod 4)
    INADMISSIBLE = "inadmissible"


def _is_power_of_two(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def v3(n: int) -> int:
    """3-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("v3(0) is infinite")
    n = abs(n)
    k = 0
    while n % 3 == 0:
        n //= 3
        k += 1
    return k


@dataclass(frozen=True)
class PhiRep:
    """``q^alpha / psi(q)^beta * sum v phi(-q)^s phi(-q^3)^t``.

    ``terms`` is a tuple of ``(s, t, v)`` sorted by s descending.  Exact
    representations hold Fraction weights; with ``modulus`` set the weights are
    residues mod M and ``two_exponent`` records the power of 2 that clears the
    denominators of the exact weights they stand for.
    """

    alpha: int
    beta: int
    terms: tuple
    modulus: Optional[int] = None
    two_exponent: Optional[int] = field(default=None)

    def __post_init__(self):
        if self.beta < 1:
            raise ValueError("beta must be positive")
        terms = tuple((int(s), int(t), v) for s, t, v in self.terms)
        object.__setattr__(self, "terms", terms)
        seen = set()
        prev = None
        for s, t, v in terms:
            if (s, t) in seen:
                raise ValueError(f"duplicate term ({s}, {t})")
            seen.add((s, t))
            if prev is not None and s >= prev:
                raise ValueError("terms must be sorted by s descending")
            prev = s
            if not v:
                raise ValueError(f"zero weight at ({s}, {t})")
            if self.modulus is None:
                if not _is_power_of_two(Fraction(v).denominator):
                    raise ValueError(f"weight {v} at ({s}, {t}) has a denominator that is not a power of 2")
            elif not isinstance(v, int) or not 0 <= v < self.modulus:
                raise ValueError(f"weight {v!r} is not a residue mod {self.modulus}")
        if terms:
            s0, t0, _ = terms[0]
            for s, t, _ in terms:
                if (s - s0) % 4 or (t - t0) % 4:
                    raise ValueError("exponents fall in different classes mod 4")
                if s + t != s0 + t0:
                    raise ValueError("s + t is not constant across terms")
        if self.modulus is None:
            e = max((Fraction(v).denominator.bit_length() - 1 for _, _, v in terms), default=0)
            object.__setattr__(self, "terms", tuple((s, t, Fraction(v)) for s, t, v in terms))
            object.__setattr__(self, "two_exponent", e)
        elif self.two_exponent is None:
            object.__setattr__(self, "two_exponent", 0)

    @classmethod
    def build(cls, alpha: int, beta: int, terms: Iterable, modulus: Optional[int] = None,
              two_exponent: Optional[int] = None) -> "PhiRep":
        """Merge like (s, t), drop zero weights and sort."""
        acc: dict = {}
        for s, t, v in terms:
            acc[(s, t)] = acc.get((s, t), 0) + v
        rows = []
        for (s, t), v in acc.items():
            if modulus is not None:
                v = int(v) % modulus
            if v:
                rows.append((s, t, v))
        rows.sort(key=lambda r: -r[0])
        return cls(alpha, beta, tuple(rows), modulus, two_exponent)

    @property
    def lam(self) -> int:
        return self.beta % 4

    @property
    def common_sum(self) -> Optional[int]:
        return self.terms[0][0] + self.terms[0][1] if self.terms else None

    @property
    def exponent_class(self) -> Optional[tuple]:
        """``(s mod 4, t mod 4, lambda)``, or None for an empty representation."""
        if not self.terms:
            return None
        s, t, _ = self.terms[0]
        return (s % 4, t % 4, self.lam)

    def reduce_mod(self, modulus: int) -> "PhiRep":
        if modulus % 2 == 0:
            raise NonInvertibleDenominator(None, 2, modulus)
        if self.modulus is not None:
            if self.modulus % modulus:
                raise ValueError(f"cannot reduce mod {self.modulus} representation to mod {modulus}")
            rows = [(s, t, v % modulus) for s, t, v in self.terms]
        else:
            rows = [(s, t, v.numerator * pow(v.denominator, -1, modulus)) for s, t, v in self.terms]
        return PhiRep.build(self.alpha, self.beta, rows, modulus, self.two_exponent)

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "modulus": self.modulus,
            "two_exponent": self.two_exponent,
            "terms": [[s, t, str(v)] for s, t, v in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "PhiRep":
        m = data.get("modulus")
        conv = int if m is not None else Fraction
        terms = [(s, t, conv(v)) for s, t, v in data["terms"]]
        return cls(data["alpha"], data["beta"], tuple(terms), m,
                   data.get("two_exponent") if m is not None else None)


def rep_for_b() -> PhiRep:
    """Generating function of cubic partition pairs, 1/(psi(q)^2 phi(-q)^2)."""
    return PhiRep(0, 2, ((-2, 0, Fraction(1)),))


def check_admissible(rep: PhiRep) -> Admissibility:
    lam = rep.lam
    if not rep.terms:
        # vacuous: only the psi power constrains an empty sum
        return {0: Admissibility.COND1, 2: Admissibility.COND2}.get(lam, Admissibility.INADMISSIBLE)
    s, t, _ = rep.terms[0]
    if lam == 0 and (s - t) % 4 == 0:
        return Admissibility.COND1
    if lam == 2 and (s - t - 2) % 4 == 0:
        return Admissibility.COND2
    return Admissibility.INADMISSIBLE


# -- polynomials in xi -----------------------------------------------------------

def _poly_mul(a: list, b: list, modulus: Optional[int]) -> list:
    out = convolve(a, b, len(a) + len(b) - 1)
    return [x % modulus for x in out] if modulus else out


def _poly_pow(a: list, k: int, modulus: Optional[int]) -> list:
    result = [1]
    base = a
    while k:
        if k & 1:
            result = _poly_mul(result, base, modulus)
        k >>= 1
        if k:
            base = _poly_mul(base, base, modulus)
    return result


@lru_cache(maxsize=64)
def _kernel_power(beta: int, modulus: Optional[int]) -> tuple:
    """Coefficients of (4 xi - 2 xi^2 + xi^3)^beta, index = xi power."""
    return tuple([0] * beta + _poly_pow([4, -2, 1], beta, modulus))


def _xi_polynomial(s: int, beta: int, modulus: Optional[int]) -> list:
    kernel = list(_kernel_power(beta, modulus))
    if s >= 0:
        factor = [(-1) ** i * math.comb(s, i) for i in range(s + 1)]
    else:
        factor = _poly_pow([1, 1, 1], -s, modulus)
    return _poly_mul(kernel, factor, modulus)


def dissect_step(rep: PhiRep) -> tuple:
    """One 3-dissection step: returns ``(ell, next_rep)`` with next generating u(3n + ell)."""
    if check_admissible(rep) is Admissibility.INADMISSIBLE:
        raise InadmissibleRepresentation(
            f"beta={rep.beta}, class={rep.exponent_class}: neither lambda=0, s=t nor lambda=2, s=t+2 (mod 4)")
    alpha, beta, mod = rep.alpha, rep.beta, rep.modulus
    ell = (alpha - beta) % 3

    # weight of X^r where X = phi(-q^3)^4 / phi(-q^9)^4, keyed by the new (s, t)
    acc: dict = {}
    for s, t, v in rep.terms:
        if s >= 0:
            a, b = t - beta, s + 3 * beta
        else:
            a, b = t + 4 * s - beta, 3 * beta - 3 * s
        poly = _xi_polynomial(s, beta, mod)
        weights = [0] * (len(poly) // 3 + 1)
        for j in range(0, len(poly), 3):
            m = poly[j]
            if not m:
                continue
            # xi^(3j) = (1 - X)^j
            jj = j // 3
            for r in range(jj + 1):
                c = math.comb(jj, r)
                weights[r] += -m * c if r % 2 else m * c
        for r, c in enumerate(weights):
            if c:
                key = (a + 4 * r, b - 4 * r)
                acc[key] = acc.get(key, 0) + v * c

    new_alpha = (alpha - beta - ell) // 3
    if mod is not None:
        scale = pow(8 ** beta, -1, mod)
        rows = [(sp, tp, w * scale) for (sp, tp), w in acc.items()]
        nxt = PhiRep.build(new_alpha, 3 * beta, rows, mod, rep.two_exponent + 3 * beta)
    else:
        scale = Fraction(1, 8 ** beta)
        rows = [(sp, tp, w * scale) for (sp, tp), w in acc.items()]
        nxt = PhiRep.build(new_alpha, 3 * beta, rows)

    total = rep.common_sum + 2 * beta if rep.terms else None
    if nxt.terms:
        if nxt.exponent_class != rep.exponent_class:
            raise ArithmeticError(f"class changed: {rep.exponent_class} -> {nxt.exponent_class}")
        if nxt.common_sum != total:
            raise ArithmeticError(f"common sum {nxt.common_sum}, expected {total}")
    return ell, nxt


@dataclass(frozen=True)
class ChainResult:
    steps: tuple  # ((ell, PhiRep), ...)
    progression: tuple  # (3^k, L)
    modulus: Optional[int] = None

    @property
    def final(self) -> PhiRep:
        return self.steps[-1][1]

    @property
    def ells(self) -> tuple:
        return tuple(e for e, _ in self.steps)


def dissect_chain(rep: PhiRep, k: int, modulus: Optional[int] = None) -> ChainResult:
    """Apply :func:`dissect_step` k times, optionally reducing weights mod ``modulus`` throughout."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if modulus is not None:
        rep = rep.reduce_mod(modulus)
    steps = []
    offset = 0
    cur = rep
    for i in range(k):
        ell, cur = dissect_step(cur)
        offset += ell * 3 ** i
        steps.append((ell, cur))
    return ChainResult(tuple(steps), (3 ** k, offset), modulus)


def progression_offsets(alpha: int, beta: int, k: int) -> list:
    """Offsets L_1..L_k of the chain, from the (alpha, beta) bookkeeping alone."""
    out = []
    offset = 0
    for i in range(k):
        ell = (alpha - beta) % 3
        offset += ell * 3 ** i
        out.append(offset)
        alpha, beta = (alpha - beta - ell) // 3, 3 * beta
    return out


def ell_closed_form(k: int) -> int:
    """Offset of the k-th progression 3^k n + L for the cubic partition pair chain."""
    if k % 2 == 0:
        return 1 + (3 ** (k + 1) - 3) // 4
    return 1 + (3 ** k - 3) // 4


def min_3adic_valuation(rep: PhiRep) -> int:
    """Minimum 3-adic valuation of the weights.

    Denominators are powers of 2, so this bounds from below the 3-adic
    valuation of every coefficient of the generated series.  For a modular
    representation the answer is capped at v3(modulus).
    """
    if not rep.terms:
        raise EmptyRepresentation("no terms")
    if rep.modulus is None:
        return min(v3(v.numerator) for _, _, v in rep.terms)
    cap = v3(rep.modulus) if rep.modulus % 3 == 0 else 0
    return min(min(v3(v), cap) for _, _, v in rep.terms)


def rep_to_series(rep: PhiRep, precision: int) -> QSeries:
    """Expand the representation numerically (exact, or mod ``rep.modulus``)."""
    mod = rep.modulus
    if not rep.terms:
        return QSeries.zero(precision, mod)
    p = max(precision - rep.alpha, 1)
    ph1 = phi_minus(1, p, mod)
    ph3 = phi_minus(3, p, mod)
    kappa = (ph1 * ph3.inverse()) ** 4
    s_min, t_at, _ = rep.terms[-1]
    # sum v phi^s phi3^t = phi^s_min phi3^t_at * P(kappa), P(x) = sum v x^((s - s_min)/4)
    by_power = {(s - s_min) // 4: v for s, _, v in rep.terms}
    acc = QSeries.one(p, mod) * by_power[max(by_power)]
    for k in range(max(by_power) - 1, -1, -1):
        acc = acc * kappa
        if k in by_power:
            acc = acc + by_power[k]
    body = acc * ph1 ** s_min * ph3 ** t_at * psi(1, p, mod) ** (-rep.beta)
    return body.shift(rep.alpha).truncate(precision)


# -- display -------------------------------------------------------------------

@dataclass(frozen=True)
class DisplayRep:
    """``q^alpha / (2^E psi(q)^beta) * sum c phi(-q)^s phi(-q^3)^t`` with integer c."""

    alpha: int
    two_exponent: int
    beta: int
    rows: tuple  # ((s, t, c), ...), s descending
    modulus: Optional[int] = None

    def to_json(self) -> dict:
        out = {"alpha": self.alpha, "two_exponent": self.two_exponent, "beta": self.beta}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        out["rows"] = [[s, t, str(c)] for s, t, c in self.rows]
        return out

    def to_text(self, progression: Optional[tuple] = None) -> str:
        if progression is None:
            lhs = "sum u(n) q^n"
        else:
            m, r = progression
            lhs = f"sum_(n>=0) b({m}n+{r}) q^n" if m > 1 else "sum_(n>=0) b(n) q^n"
        head = f"{lhs}\n  = q^{self.alpha} / (2^{self.two_exponent} psi(q)^{self.beta}) * ("
        lines = [head]
        width = max((len(str(abs(c))) for _, _, c in self.rows), default=1)
        for i, (s, t, c) in enumerate(self.rows):
            sign = "-" if c < 0 else ("+" if i else " ")
            lines.append(f"      {sign} {abs(c):>{width}} {_monomial(s, t)}")
        tail = "    )"
        if self.modulus is not None:
            tail += f"  (mod {self.modulus})"
        lines.append(tail)
        return "\n".join(lines)


def _monomial(s: int, t: int) -> str:
    num, den = [], []
    for base, e in (("phi(-q)", s), ("phi(-q^3)", t)):
        if e > 0:
            num.append(f"{base}^{e}")
        elif e < 0:
            den.append(f"{base}^{-e}")
    text = " ".join(num) if num else "1"
    if den:
        text += " / " + " ".join(den)
    return text


def normalize_display(rep: PhiRep, modulus: Optional[int] = None) -> DisplayRep:
    """Clear denominators with 2^E and optionally reduce mod ``modulus`` (zero rows dropped)."""
    if modulus is not None and modulus % 2 == 0:
        raise NonInvertibleDenominator(None, 2, modulus)
    e = rep.two_exponent
    if rep.modulus is None:
        rows = [(s, t, int(v * 2 ** e)) for s, t, v in rep.terms]
        out_mod = modulus
    else:
        if modulus is not None and rep.modulus % modulus:
            raise ValueError(f"cannot display a mod {rep.modulus} representation mod {modulus}")
        out_mod = modulus or rep.modulus
        rows = [(s, t, v * pow(2, e, out_mod)) for s, t, v in rep.terms]
    if out_mod is not None:
        rows = [(s, t, c % out_mod) for s, t, c in rows if c % out_mod]
    return DisplayRep(rep.alpha, e, rep.beta, tuple(rows), out_mod)
