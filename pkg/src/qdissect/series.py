"""Truncated Laurent series in q with exact rational or modular coefficients.

A :class:`QSeries` records a window of coefficients ``valuation .. precision-1``.
Every coefficient inside the window is known exactly; nothing is claimed at or
beyond ``precision``.  Arithmetic propagates the window pessimistically, so a
coefficient that is reported is never an artifact of truncation.

Exact series store integer numerators over one common positive denominator.
Modular series (``modulus`` set) store least nonnegative residues.  Products
of long series go through Kronecker substitution on gmpy2 integers.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Optional, Sequence

import gmpy2

from .errors import NonInvertibleDenominator, QueryBeyondPrecision, ZeroLeadingCoefficient

__all__ = [
    "QSeries",
    "qs_coeff",
    "qs_add",
    "qs_mul",
    "qs_inv",
    "qs_pow",
    "qs_eta",
    "qs_extract",
    "qs_substitute_power",
    "qs_reduce_mod",
    "eta_quotient",
    "pentagonal_exponents",
    "convolve",
]

# schoolbook product is used while (nonzeros of the sparser operand) * (output length) stays below this
_SCHOOLBOOK_WORK = 60_000


def _schoolbook(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    out = [0] * n
    lb = len(b)
    for i, x in enumerate(a):
        if i >= n:
            break
        if not x:
            continue
        for j in range(min(lb, n - i)):
            out[i + j] += x * b[j]
    return out


def _pack(vals: Sequence[int], nbytes: int):
    zero = bytes(nbytes)
    pos = b"".join(v.to_bytes(nbytes, "little") if v > 0 else zero for v in vals)
    x = gmpy2.mpz(int.from_bytes(pos, "little"))
    if any(v < 0 for v in vals):
        neg = b"".join((-v).to_bytes(nbytes, "little") if v < 0 else zero for v in vals)
        x -= gmpy2.mpz(int.from_bytes(neg, "little"))
    return x


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """First ``n`` coefficients of the product of integer lists ``a`` and ``b``."""
    if n <= 0:
        return []
    a = a[:n]
    b = b[:n]
    if not a or not b:
        return [0] * n
    nnz = min(sum(1 for x in a if x), sum(1 for x in b if x))
    if nnz == 0:
        return [0] * n
    if nnz * n <= _SCHOOLBOOK_WORK:
        return _schoolbook(a, b, n)

    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    # one spare bit for the sign of each slot
    nbytes = (bound.bit_length() + 1) // 8 + 1
    z = _pack(a, nbytes) * _pack(b, nbytes)

    # Shift every slot by 2^(k-1) so the signed digits become plain base-2^k digits.
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * n, "little")
    mask = (gmpy2.mpz(1) << (8 * nbytes * n)) - 1
    raw = int((z + offset) & mask).to_bytes(nbytes * n, "little")
    view = memoryview(raw)
    return [int.from_bytes(view[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)]


def _newton_inverse(a: Sequence[int], n: int, modulus: Optional[int]) -> list[int]:
    """Inverse of an integer series with ``a[0] == 1`` to ``n`` terms (Newton doubling)."""
    g = [1]
    k = 1
    while k < n:
        k2 = min(2 * k, n)
        e = convolve(a[:k2], g, k2)
        tail = e[k:k2]
        if modulus:
            tail = [x % modulus for x in tail]
        corr = convolve(g[:k2 - k], tail, k2 - k)
        if modulus:
            g.extend((-x) % modulus for x in corr)
        else:
            g.extend(-x for x in corr)
        k = k2
    return g


def _lcm(a: int, b: int) -> int:
    return a // math.gcd(a, b) * b


class QSeries:
    """Immutable truncated Laurent series ``sum c_n q^n + O(q^precision)``.

    ``coeffs`` may hold ints or Fractions.  ``precision`` defaults to the end of
    the given window.  With ``modulus`` set the coefficients are residues mod M.
    """

    __slots__ = ("valuation", "precision", "modulus", "_num", "_den")

    def __init__(
        self,
        coeffs: Iterable = (),
        valuation: int = 0,
        precision: Optional[int] = None,
        modulus: Optional[int] = None,
    ):
        vals = list(coeffs)
        if precision is None:
            precision = valuation + len(vals)
        if len(vals) > precision - valuation:
            raise ValueError("more coefficients than the precision window holds")
        if modulus is not None and modulus < 2:
            raise ValueError("modulus must be at least 2")
        fracs = [Fraction(c) for c in vals]
        den = 1
        for f in fracs:
            den = _lcm(den, f.denominator)
        tmp = QSeries._raw([f.numerator * (den // f.denominator) for f in fracs],
                           den, valuation, precision, None)
        if modulus is not None:
            tmp = tmp.reduce_mod(modulus)
        for name in QSeries.__slots__:
            setattr(self, name, getattr(tmp, name))

    @classmethod
    def _raw(cls, nums, den: int, valuation: int, precision: int, modulus: Optional[int]) -> "QSeries":
        """Build from a numerator list covering ``valuation .. precision-1`` (may be short)."""
        self = object.__new__(cls)
        if modulus is not None:
            nums = [x % modulus for x in nums]
            den = 1
        start = 0
        limit = min(len(nums), precision - valuation)
        while start < limit and not nums[start]:
            start += 1
        if start >= limit:
            self.valuation = precision
            self.precision = precision
            self.modulus = modulus
            self._num = ()
            self._den = 1
            return self
        body = list(nums[start:limit])
        body.extend([0] * (precision - valuation - limit))
        if den < 0:
            den = -den
            body = [-x for x in body]
        if den != 1:
            g = math.gcd(den, *body)
            if g != 1:
                den //= g
                body = [x // g for x in body]
        self.valuation = valuation + start
        self.precision = precision
        self.modulus = modulus
        self._num = tuple(body)
        self._den = den
        return self

    # -- constructors -------------------------------------------------------

    @classmethod
    def one(cls, precision: int, modulus: Optional[int] = None) -> "QSeries":
        return cls._raw([1], 1, 0, precision, modulus)

    @classmethod
    def zero(cls, precision: int, modulus: Optional[int] = None) -> "QSeries":
        return cls._raw([], 1, precision, precision, modulus)

    @classmethod
    def monomial(cls, exponent: int, precision: int, coeff=1, modulus: Optional[int] = None) -> "QSeries":
        if precision <= exponent:
            return cls.zero(precision, modulus)
        return cls([coeff], exponent, precision, modulus)

    # -- inspection ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self._num

    @property
    def denominator(self) -> int:
        return self._den

    @property
    def numerators(self) -> tuple:
        """Numerators over :attr:`denominator` for exponents ``valuation .. precision-1``."""
        return self._num

    @property
    def coeffs(self) -> tuple:
        d = self._den
        return tuple(Fraction(x, d) for x in self._num)

    def integer_coeffs(self, start: int = 0, stop: Optional[int] = None) -> list[int]:
        """Integer coefficients of ``q^start .. q^(stop-1)``; the series must be integral."""
        if stop is None:
            stop = self.precision
        if stop > self.precision:
            raise QueryBeyondPrecision(f"q^{stop - 1} requested, precision is {self.precision}")
        if self._den != 1:
            raise ValueError("series has non-integral coefficients")
        v = self.valuation
        out = [0] * max(0, min(stop, v) - start)
        lo = max(start, v)
        out.extend(self._num[lo - v: stop - v])
        return out

    def coefficient(self, n: int) -> Fraction:
        if n >= self.precision:
            raise QueryBeyondPrecision(f"q^{n} requested, precision is {self.precision}")
        if n < self.valuation:
            return Fraction(0)
        return Fraction(self._num[n - self.valuation], self._den)

    __getitem__ = coefficient

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            if self.modulus == other.modulus:
                return other
            if other.modulus is None:
                return other.reduce_mod(self.modulus)
            if self.modulus is None:
                raise TypeError("mix exact and modular series via reduce_mod on the exact one")
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")
        if isinstance(other, (int, Rational)):
            # constants are exact to any precision
            c = Fraction(other)
            const = QSeries._raw([c.numerator], c.denominator, 0, self.precision, None)
            return const if self.modulus is None else const.reduce_mod(self.modulus)
        return NotImplemented

    def _scaled(self, c: Fraction) -> "QSeries":
        c = Fraction(c)
        if self.modulus is not None:
            m = self.modulus
            try:
                k = c.numerator * pow(c.denominator, -1, m)
            except ValueError:
                raise NonInvertibleDenominator(None, c.denominator, m) from None
            return QSeries._raw([x * k for x in self._num], 1, self.valuation, self.precision, m)
        if self.is_zero:
            return self
        return QSeries._raw([x * c.numerator for x in self._num], self._den * c.denominator,
                            self.valuation, self.precision, None)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        prec = min(self.precision, other.precision)
        lo = min(self.valuation, other.valuation)
        if lo >= prec:
            return QSeries.zero(prec, self.modulus)
        den = _lcm(self._den, other._den)
        out = [0] * (prec - lo)
        for s in (self, other):
            f = den // s._den
            base = s.valuation - lo
            for i, x in enumerate(s._num[: max(0, prec - s.valuation)]):
                out[base + i] += x * f
        return QSeries._raw(out, den, lo, prec, self.modulus)

    __radd__ = __add__

    def __neg__(self):
        return QSeries._raw([-x for x in self._num], self._den, self.valuation, self.precision, self.modulus)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            return self._scaled(Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        v = self.valuation + other.valuation
        prec = min(self.precision + other.valuation, other.precision + self.valuation)
        if self.is_zero or other.is_zero or v >= prec:
            return QSeries.zero(prec, self.modulus)
        n = prec - v
        prod = convolve(self._num, other._num, n)
        return QSeries._raw(prod, self._den * other._den, v, prec, self.modulus)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self._scaled(1 / Fraction(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            rel = self.precision - self.valuation if not self.is_zero else self.precision
            return QSeries.one(max(rel, 1), self.modulus)
        result = None
        base = self
        while True:
            if k & 1:
                result = base if result is None else result * base
            k >>= 1
            if not k:
                return result
            base = base * base

    def inverse(self) -> "QSeries":
        if self.is_zero:
            raise ZeroLeadingCoefficient("cannot invert a series with no known nonzero coefficient")
        v = self.valuation
        n = self.precision - v
        a = list(self._num)
        c = a[0]
        m = self.modulus
        if m is not None:
            try:
                cinv = pow(c, -1, m)
            except ValueError:
                raise ZeroLeadingCoefficient(f"leading coefficient {c} is not a unit mod {m}") from None
            g = _newton_inverse([x * cinv % m for x in a], n, m)
            return QSeries._raw([x * cinv for x in g], 1, -v, self.precision - 2 * v, m)
        if c in (1, -1):
            g = _newton_inverse([x * c for x in a] if c == -1 else a, n, None)
            nums = [x * c * self._den for x in g] if c == -1 else [x * self._den for x in g]
            return QSeries._raw(nums, 1, -v, self.precision - 2 * v, None)
        # 1/A(q) = sum I_i q^i / c^(i+1) where I = 1/Ahat, Ahat_i = A_i c^(i-1)
        scaled = [1]
        p = 1
        for x in a[1:]:
            scaled.append(x * p)
            p *= c
        g = _newton_inverse(scaled, n, None)
        nums = []
        p = 1
        for x in reversed(g):
            nums.append(x * p * self._den)
            p *= c
        nums.reverse()
        return QSeries._raw(nums, c ** n, -v, self.precision - 2 * v, None)

    # -- structural operations ---------------------------------------------

    def shift(self, k: int) -> "QSeries":
        """Multiply by ``q^k``."""
        return QSeries._raw(self._num, self._den, self.valuation + k, self.precision + k, self.modulus)

    def truncate(self, precision: int) -> "QSeries":
        if precision > self.precision:
            raise QueryBeyondPrecision(f"cannot raise precision {self.precision} to {precision}")
        v = min(self.valuation, precision)
        return QSeries._raw(self._num[: precision - v], self._den, v, precision, self.modulus)

    def extract(self, m: int, r: int) -> "QSeries":
        """``sum_n c_{mn+r} q^n`` over every n whose coefficient is known."""
        if m < 1 or not 0 <= r < m:
            raise ValueError(f"need m >= 1 and 0 <= r < m, got m={m}, r={r}")
        prec = -((r - self.precision) // m)  # ceil((precision - r) / m)
        if self.is_zero:
            return QSeries.zero(prec, self.modulus)
        n0 = -((r - self.valuation) // m)
        first = m * n0 + r - self.valuation
        nums = self._num[first::m]
        return QSeries._raw(nums, self._den, n0, prec, self.modulus)

    def substitute_power(self, m: int) -> "QSeries":
        """``q -> q^m``."""
        if m < 1:
            raise ValueError("substitution power must be positive")
        if m == 1 or self.is_zero:
            return QSeries._raw(self._num, self._den, m * self.valuation, m * self.precision, self.modulus)
        out = [0] * (m * len(self._num))
        out[::m] = self._num
        return QSeries._raw(out, self._den, m * self.valuation, m * self.precision, self.modulus)

    def negate_variable(self) -> "QSeries":
        """``q -> -q``."""
        v = self.valuation
        nums = [x if (v + i) % 2 == 0 else -x for i, x in enumerate(self._num)]
        return QSeries._raw(nums, self._den, v, self.precision, self.modulus)

    def reduce_mod(self, modulus: int) -> "QSeries":
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        if self.modulus is not None:
            if self.modulus % modulus:
                raise ValueError(f"cannot reduce a series mod {self.modulus} to mod {modulus}")
            return QSeries._raw(self._num, 1, self.valuation, self.precision, modulus)
        d = self._den
        if math.gcd(d, modulus) == 1:
            k = pow(d, -1, modulus)
            return QSeries._raw([x * k for x in self._num], 1, self.valuation, self.precision, modulus)
        out = []
        for i, x in enumerate(self._num):
            g = math.gcd(x, d)
            di = d // g
            if math.gcd(di, modulus) != 1:
                raise NonInvertibleDenominator(self.valuation + i, di, modulus)
            out.append((x // g) * pow(di, -1, modulus))
        return QSeries._raw(out, 1, self.valuation, self.precision, modulus)

    def lift(self) -> "QSeries":
        """Forget the modulus, keeping least nonnegative residues as exact integers."""
        return QSeries._raw(self._num, self._den, self.valuation, self.precision, None)

    # -- comparison / serialization ----------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.valuation, self.precision, self.modulus, self._num, self._den) == (
            other.valuation, other.precision, other.modulus, other._num, other._den)

    def __hash__(self):
        return hash((self.valuation, self.precision, self.modulus, self._num, self._den))

    def to_json(self) -> dict:
        d = self._den
        coeffs = []
        for x in self._num:
            f = Fraction(x, d)
            coeffs.append([str(f.numerator), str(f.denominator)])
        out = {"valuation": self.valuation, "precision": self.precision, "coeffs": coeffs}
        if self.modulus is not None:
            out["modulus"] = self.modulus
        return out

    @classmethod
    def from_json(cls, data: dict) -> "QSeries":
        coeffs = [Fraction(int(n), int(d)) for n, d in data["coeffs"]]
        return cls(coeffs, data["valuation"], data["precision"], data.get("modulus"))

    def __repr__(self):
        terms = []
        for i, x in enumerate(self._num):
            if not x:
                continue
            if len(terms) == 8:
                terms.append("...")
                break
            c = Fraction(x, self._den)
            e = self.valuation + i
            mono = "" if e == 0 else ("q" if e == 1 else f"q^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        terms.append(f"O(q^{self.precision})")
        body = " + ".join(terms).replace("+ -", "- ")
        tail = f", mod {self.modulus}" if self.modulus is not None else ""
        return f"QSeries({body}{tail})"


# -- functional API -----------------------------------------------------------

def qs_coeff(a: QSeries, n: int) -> Fraction:
    return a.coefficient(n)


def qs_add(a: QSeries, b: QSeries) -> QSeries:
    return a + b


def qs_mul(a: QSeries, b: QSeries) -> QSeries:
    return a * b


def qs_inv(a: QSeries) -> QSeries:
    return a.inverse()


def qs_pow(a: QSeries, k: int) -> QSeries:
    return a ** k


def qs_extract(a: QSeries, m: int, r: int) -> QSeries:
    return a.extract(m, r)


def qs_substitute_power(a: QSeries, m: int) -> QSeries:
    return a.substitute_power(m)


def qs_reduce_mod(a: QSeries, modulus: int) -> QSeries:
    return a.reduce_mod(modulus)


def pentagonal_exponents(limit: int):
    """Yield ``(k(3k-1)/2, (-1)^k)`` for k = 0, 1, -1, 2, -2, ... below ``limit``."""
    yield 0, 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        if g1 >= limit:
            return
        sign = -1 if k % 2 else 1
        yield g1, sign
        g2 = k * (3 * k + 1) // 2
        if g2 < limit:
            yield g2, sign
        k += 1


def _euler(precision: int, modulus: Optional[int]) -> QSeries:
    nums = [0] * precision
    for e, sign in pentagonal_exponents(precision):
        nums[e] = sign
    return QSeries._raw(nums, 1, 0, precision, modulus)


def qs_eta(m: int, e: int, precision: int, modulus: Optional[int] = None) -> QSeries:
    """``(q^m; q^m)_inf^e`` to ``precision``; the base product is the sparse pentagonal sum."""
    if m < 1:
        raise ValueError("m must be positive")
    if precision < 1:
        return QSeries.zero(max(precision, 0), modulus)
    inner = -(-precision // m)
    base = _euler(inner, modulus)
    if e != 1:
        base = base ** e
    return base.substitute_power(m).truncate(precision)


def eta_quotient(factors: dict, precision: int, modulus: Optional[int] = None) -> QSeries:
    """``prod_m (q^m; q^m)_inf^{e_m}`` for ``factors = {m: e_m}``."""
    out = QSeries.one(precision, modulus)
    for m, e in sorted(factors.items()):
        if e:
            out = out * qs_eta(m, e, precision, modulus)
    return out
