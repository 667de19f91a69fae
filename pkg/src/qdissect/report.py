"""Structured outcome of a verification run."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .series import QSeries

MAX_VIOLATIONS = 10

Progression = Union[tuple, str]


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else str(x.numerator)
    if isinstance(x, int):
        return str(x)
    return x


@dataclass(frozen=True)
class CheckReport:
    """One claim checked over a finite range.

    ``modulus`` is 0 for exact equality.  ``progression`` is ``(m, r)`` for
    claims about coefficients ``mn + r`` and ``"identity"`` otherwise.
    ``violations`` holds at most :data:`MAX_VIOLATIONS` ``(n, residue)`` pairs,
    smallest n first.
    """

    claim: str
    modulus: int
    progression: Progression
    checked: int
    violations: tuple = ()
    subchecks: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if self.checked <= 0:
            raise ValueError(f"{self.claim}: a report must cover at least one value")

    @property
    def status(self) -> str:
        return "fail" if self.violations else "pass"

    @property
    def passed(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        prog = list(self.progression) if isinstance(self.progression, tuple) else self.progression
        out = {
            "claim": self.claim,
            "modulus": self.modulus,
            "progression": prog,
            "checked": self.checked,
            "status": self.status,
            "violations": [[n, _jsonable(r)] for n, r in self.violations],
        }
        if self.subchecks:
            out["subchecks"] = [s.to_json() for s in self.subchecks]
        return out

    def summary(self) -> str:
        prog = (f"{self.progression[0]}n+{self.progression[1]}"
                if isinstance(self.progression, tuple) else self.progression)
        mod = f"mod {self.modulus}" if self.modulus else "exact"
        line = f"{self.status.upper():4}  {self.claim:<16} {prog:<12} {mod:<10} checked={self.checked}"
        if self.violations:
            n, r = self.violations[0]
            line += f"  first violation n={n} ({_jsonable(r)})"
        return line


def combine(claim: str, parts, modulus: int = 0, progression: Progression = "identity") -> CheckReport:
    """Fold sub-reports into one; violations are the union (capped)."""
    parts = tuple(parts)
    viol = []
    for p in parts:
        viol.extend(p.violations)
    return CheckReport(claim, modulus, progression, max(p.checked for p in parts),
                       tuple(viol[:MAX_VIOLATIONS]), parts)


def compare_series(
    claim: str,
    lhs: QSeries,
    rhs: QSeries,
    limit: int,
    modulus: Optional[int] = None,
    start: Optional[int] = None,
) -> CheckReport:
    """Check ``lhs == rhs`` (or ``lhs == rhs mod modulus``) for every exponent below ``limit``.

    The range starts at the lowest valuation of either side (and at most 0).
    Raises QueryBeyondPrecision if either side is not known up to ``limit``.
    """
    if start is None:
        start = min(0, lhs.valuation, rhs.valuation)
    if modulus:
        lhs = lhs.reduce_mod(modulus)
        rhs = rhs.reduce_mod(modulus)
    if lhs.denominator == 1 and rhs.denominator == 1:
        a = lhs.integer_coeffs(start, limit)
        b = rhs.integer_coeffs(start, limit)
    else:
        a = [lhs.coefficient(n) for n in range(start, limit)]
        b = [rhs.coefficient(n) for n in range(start, limit)]
    viol = []
    for i, (x, y) in enumerate(zip(a, b)):
        d = x - y
        if modulus:
            d %= modulus
        if d:
            viol.append((start + i, d))
            if len(viol) == MAX_VIOLATIONS:
                break
    return CheckReport(claim, modulus or 0, "identity", limit - start, tuple(viol))
