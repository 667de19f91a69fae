"""Registry of named claims: stable id -> (check, default range)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

from . import lab, theta
from .dissector import (
    dissect_chain,
    ell_closed_form,
    min_3adic_valuation,
    normalize_display,
    progression_offsets,
    rep_for_b,
    rep_to_series,
)
from .errors import UnknownClaim
from .report import MAX_VIOLATIONS, CheckReport, combine, compare_series
from .tables import ELL_SEQUENCE, GOLDEN


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    default: Optional[int]
    run: Callable  # (range, mutate) -> CheckReport


@lru_cache(maxsize=8)
def reference_chain(steps: int, modulus: Optional[int]):
    return dissect_chain(rep_for_b(), steps, modulus)


def _table_check(claim: str, mutate: bool) -> CheckReport:
    table = GOLDEN[claim]
    rows = list(table["rows"])
    if mutate:
        s, t, c = rows[0]
        rows[0] = (s, t, c + 1)
    chain = reference_chain(table["step"], table["modulus"])
    disp = normalize_display(chain.final, table["modulus"])
    viol = []
    header = (chain.progression, disp.alpha, disp.two_exponent, disp.beta)
    want = (table["progression"], table["alpha"], table["two_exponent"], table["beta"])
    if header != want:
        viol.append((-1, str(header)))
    got = list(disp.rows)
    for i in range(max(len(got), len(rows))):
        g = got[i] if i < len(got) else None
        w = rows[i] if i < len(rows) else None
        if g != w:
            viol.append((i, str(g)))
    return CheckReport(claim, table["modulus"] or 0, table["progression"], len(rows),
                       tuple(viol[:MAX_VIOLATIONS]))


def _symbolic_valuation(claim: str, steps: int, modulus: Optional[int], needed: int) -> CheckReport:
    chain = reference_chain(steps, modulus)
    got = min_3adic_valuation(chain.final)
    viol = () if got >= needed else ((0, got),)
    return CheckReport(claim, 3 ** needed, chain.progression, len(chain.final.terms), viol)


def _oracle(limit: int) -> CheckReport:
    chain = reference_chain(4, None)
    b = lab.gen_b(81 * limit + 81)
    parts = []
    offset = 0
    for k, (ell, rep) in enumerate(chain.steps, 1):
        offset += ell * 3 ** (k - 1)
        parts.append(compare_series(f"oracle-{3 ** k}n+{offset}", rep_to_series(rep, limit),
                                    b.extract(3 ** k, offset).truncate(limit), limit, start=0))
    return combine("dissect-oracle", parts)


def _ell_formula(k: int) -> CheckReport:
    start = rep_for_b()
    offsets = progression_offsets(start.alpha, start.beta, k)
    # the symbolic chain is cheap mod 2187 for the first four steps
    symbolic = []
    chain = reference_chain(min(k, 4), 2187)
    total = 0
    for i, (ell, _) in enumerate(chain.steps):
        total += ell * 3 ** i
        symbolic.append(total)
    viol = []
    for i, got in enumerate(offsets, 1):
        expected = {ell_closed_form(i)}
        if i <= len(ELL_SEQUENCE):
            expected.add(ELL_SEQUENCE[i - 1])
        if i <= len(symbolic):
            expected.add(symbolic[i - 1])
        if expected != {got}:
            viol.append((i, got))
    return CheckReport("ell-formula", 0, "identity", k, tuple(viol[:MAX_VIOLATIONS]))


def _progressions(claim, series_fn, cases, limit):
    s = series_fn(limit)
    parts = [lab.check_progression(s, m, r, mod, limit, f"{m}n+{r} mod {mod}") for m, r, mod in cases]
    return combine(claim, parts, cases[0][2])


def _single(claim, series_fn, m, r, mod, limit):
    return lab.check_progression(series_fn(limit), m, r, mod, limit, claim)


def _registry() -> dict:
    exact_b = lab.gen_b
    claims = [
        Claim("ramanujan-5", "p(5n+4) = 0 mod 5", 5000,
              lambda n, mut: _single("ramanujan-5", lab.gen_p, 5, 4, 5, n)),
        Claim("ramanujan-7", "p(7n+5) = 0 mod 7", 5000,
              lambda n, mut: _single("ramanujan-7", lab.gen_p, 7, 5, 7, n)),
        Claim("ramanujan-11", "p(11n+6) = 0 mod 11", 5000,
              lambda n, mut: _single("ramanujan-11", lab.gen_p, 11, 6, 11, n)),
        Claim("chan-identity", "sum a(3n+2) q^n = 3 (q^3;q^3)^3 (q^6;q^6)^3 / ((q;q)^4 (q^2;q^2)^4)", 200,
              lambda n, mut: lab.verify_chan_identity(n)),
        Claim("zz-5", "b(5n+4) = 0 mod 5", 5000,
              lambda n, mut: _single("zz-5", exact_b, 5, 4, 5, n)),
        Claim("zz-7", "b(7n+i) = 0 mod 7, i = 2, 3, 4, 6", 5000,
              lambda n, mut: _progressions("zz-7", exact_b, [(7, i, 7) for i in (2, 3, 4, 6)], n)),
        Claim("zz-9", "b(9n+7) = 0 mod 9", 5000,
              lambda n, mut: _single("zz-9", exact_b, 9, 7, 9, n)),
        Claim("lin-family-27", "b(81(7(7n+k)+4)+7) = 0 mod 27, k = 1..6", 20,
              lambda n, mut: lab.verify_lin_family_alpha0(n)),
        Claim("lin-243", "b(81n+61) = 0 mod 243", 20000,
              lambda n, mut: _single("lin-243", exact_b, 81, 61, 243, n)),
        Claim("th1.1", "b(81n+61) = 0 mod 729", 20000,
              lambda n, mut: _single("th1.1", exact_b, 81, 61, 729, n)),
        Claim("th1.1.5", "b(243n+61) = 0 mod 2187 (mod-2187 backend)", 50000,
              lambda n, mut: lab.check_progression(lab.gen_b(n, 2187), 243, 61, 2187, n, "th1.1.5")),
        Claim("th1.2-lin2", "sum b(81n+7) q^n = 9 (q^2;q^2)(q^3;q^3)^2/(q^6;q^6) mod 81", 300,
              lambda n, mut: lab.verify_lin_identity(7, n)),
        Claim("th1.2-lin3", "sum b(81n+34) q^n = 36 (q;q)(q^6;q^6)^2/(q^3;q^3) mod 81", 300,
              lambda n, mut: lab.verify_lin_identity(34, n)),
        Claim("id2.1", "psi(q^3)^3/psi(q) identity and the rewritten 1/psi(q)", 500,
              lambda n, mut: theta.check_identity_2_1(n)),
        Claim("id2.2", "1/psi(q) through the xi kernel", 500,
              lambda n, mut: theta.check_identity_2_2(n)),
        Claim("id2.3", "3-dissection of phi(-q)", 500,
              lambda n, mut: theta.check_identity_2_3(n)),
        Claim("id2.4", "3-dissection of 1/phi(-q)", 500,
              lambda n, mut: theta.check_identity_2_4(n)),
        Claim("id2.5", "xi^3 relation and kappa corollaries", 500,
              lambda n, mut: theta.check_identity_2_5(n)),
        Claim("ell-formula", "chain offsets match the closed form", 8,
              lambda n, mut: _ell_formula(n)),
        Claim("b547", "b(547): value, 3-adic valuation 7, factorization", None,
              lambda n, mut: lab.verify_b547()),
        Claim("poly20", "(1-x)^20 mod 9", None,
              lambda n, mut: lab.verify_poly_1_minus_x_20()),
    ]
    for cid in GOLDEN:
        claims.append(Claim(cid, f"published dissection table for b{cid[5:]}", None,
                            lambda n, mut, cid=cid: _table_check(cid, mut)))
    claims.extend([
        Claim("zz-9-symbolic", "step-2 weights divisible by 9", None,
              lambda n, mut: _symbolic_valuation("zz-9-symbolic", 2, None, 2)),
        Claim("th1.1-symbolic", "step-4 weights divisible by 729", None,
              lambda n, mut: _symbolic_valuation("th1.1-symbolic", 4, 2187, 6)),
        Claim("dissect-oracle", "symbolic steps 1..4 expand to the extracted progressions", 100,
              lambda n, mut: _oracle(n)),
    ])
    return {c.id: c for c in claims}


REGISTRY = _registry()


def run_claim(claim_id: str, range_: Optional[int] = None, mutate: bool = False) -> CheckReport:
    try:
        claim = REGISTRY[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None
    return claim.run(claim.default if range_ is None else range_, mutate)
