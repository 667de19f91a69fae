"""Acceptance criteria, one test each.

Runtime-bounded criteria start from cold caches so the measured time covers
the whole computation.
"""

import time

import pytest

import test_dissector as dissector_props
import test_lab as lab_props
import test_series as series_props
from oracles import b_dp, v3
from qdissect import claims, dissector, lab, theta
from qdissect.dissector import (
    dissect_chain,
    min_3adic_valuation,
    normalize_display,
    progression_offsets,
    rep_for_b,
    rep_to_series,
)
from qdissect.report import compare_series


@pytest.fixture
def cold():
    for fn in (lab.gen_p, lab.gen_a, lab.gen_b, theta._base, dissector._kernel_power, claims.reference_chain):
        fn.cache_clear()
    start = time.perf_counter()
    yield lambda: time.perf_counter() - start


def report(number, ok, detail=""):
    print(f"criterion {number}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
    assert ok, detail


@pytest.mark.criterion(1, "identity suite to precision 500, exact")
def test_identity_suite(cold):
    p = 500
    checks = [
        theta.check_identity_2_1(p),
        theta.check_identity_2_2(p),
        theta.check_identity_2_3(p),
        theta.check_identity_2_4(p),
        theta.check_identity_2_5(p),
    ]
    kappa = compare_series("kappa-w", *theta.sides_kappa(p), p)
    kappa3 = compare_series("kappa-xi-mod3", *theta.sides_kappa_mod3(p), p, 3)
    elapsed = cold()
    names = {s.claim for c in checks for s in (c.subchecks or (c,))}
    assert {"id2.1", "id2.2", "id2.3", "id2.4", "id2.5", "kappa-w", "kappa-xi-mod3"} <= names
    ok = all(c.passed and c.checked == p for c in checks) and kappa.passed and kappa3.passed
    report(1, ok and elapsed < 30, f"{elapsed:.2f}s")


@pytest.mark.criterion(2, "golden b(9n+7) table, exact")
def test_golden_exact():
    chain = dissect_chain(rep_for_b(), 2)
    disp = normalize_display(chain.final)
    expected = (
        (18, -4, 252), (14, 0, 16254), (10, 4, 54054), (6, 8, 54180),
        (2, 12, -3679992), (-2, 16, 33485805), (-6, 20, -201778452),
        (-10, 24, 846955116), (-14, 28, -2445337188), (-18, 32, 4746831012),
        (-22, 36, -6004220418), (-26, 40, 4706441496), (-30, 44, -2066242608),
        (-34, 48, 387420489),
    )
    ok = (chain.progression == (9, 7)
          and (disp.alpha, disp.two_exponent, disp.beta) == (-3, 24, 18)
          and disp.rows == expected
          and min_3adic_valuation(chain.final) >= 2)
    report(2, ok)


@pytest.mark.criterion(3, "golden b(27n+7) and b(81n+61) tables mod 2187")
def test_golden_mod_2187():
    chain = dissect_chain(rep_for_b(), 4, 2187)
    step3 = normalize_display(chain.steps[2][1], 2187)
    step4 = normalize_display(chain.final, 2187)
    ok3 = ([c for _, _, c in step3.rows] == [252, 504, 918, 2034, 396, 1755, 225, 1530, 1701, 1620]
           and [s for s, _, _ in step3.rows] == [74, 70, 66, 62, 58, 54, 50, 46, 42, 38]
           and step3.two_exponent == 78)
    ok4 = (len(step4.rows) == 12 and {c for _, _, c in step4.rows} <= {729, 1458}
           and [s for s, _, _ in step4.rows] == [230, 226, 218, 214, 194, 190, 182, 178, 158, 154, 146, 142]
           and step4.two_exponent == 240
           and min_3adic_valuation(chain.final) == 6
           and chain.progression == (81, 61))
    report(3, ok3 and ok4)


@pytest.mark.criterion(4, "b(81n+61) = 0 mod 729 below 20000, exact")
def test_b81n61_mod_729(cold):
    b = lab.gen_b(20000)
    assert b.modulus is None
    r = lab.check_progression(b, 81, 61, 729, 20000)
    elapsed = cold()
    report(4, r.passed and r.checked == 247 and elapsed < 120, f"{r.checked} cases, {elapsed:.2f}s")


@pytest.mark.criterion(5, "b(243n+61) = 0 mod 2187 below 50000, mod-2187 backend")
def test_b243n61_mod_2187(cold):
    b = lab.gen_b(50000, 2187)
    assert b.modulus == 2187
    r = lab.check_progression(b, 243, 61, 2187, 50000)
    elapsed = cold()
    expected = len(range(61, 50000, 243))
    report(5, r.passed and r.checked == expected and elapsed < 120, f"{r.checked} cases, {elapsed:.2f}s")


@pytest.mark.criterion(6, "both mod-81 identities for 300 coefficients")
def test_mod_81_identities():
    lin2 = lab.verify_lin_identity(7, 300)
    lin3 = lab.verify_lin_identity(34, 300)
    report(6, lin2.passed and lin3.passed and lin2.checked == lin3.checked == 300)


@pytest.mark.criterion(7, "symbolic steps 1..4 expand to the extracted progressions")
def test_oracle_equivalence():
    chain = dissect_chain(rep_for_b(), 4)
    b = b_dp(81 * 100 + 81)  # independent convolution oracle
    offset = 0
    ok = True
    for k, (ell, rep) in enumerate(chain.steps, 1):
        offset += ell * 3 ** (k - 1)
        got = rep_to_series(rep, 100).integer_coeffs(0, 100)
        ok &= got == b[offset::3 ** k][:100]
    report(7, ok and offset == 61)


@pytest.mark.criterion(8, "chain offsets 1, 7, 7, 61, 61, 547, 547, 4921")
def test_ell_formula():
    offsets = progression_offsets(0, 2, 8)
    closed = [dissector.ell_closed_form(k) for k in range(1, 9)]
    symbolic = dissect_chain(rep_for_b(), 4, 2187).progression[1]
    ok = offsets == closed == [1, 7, 7, 61, 61, 547, 547, 4921] and symbolic == 61
    report(8, ok and claims.run_claim("ell-formula").passed)


@pytest.mark.criterion(9, "b(547) value, valuation 7 and factorization")
def test_b547(cold):
    r = lab.verify_b547()
    value = lab.gen_b(548).coefficient(547)
    elapsed = cold()
    ok = (r.passed and value == 2135474526556068875092854278074796547960 and v3(value) == 7
          and value % 3 ** 8 != 0)
    report(9, ok and elapsed < 60, f"{elapsed:.2f}s")


@pytest.mark.criterion(10, "legacy congruences, the exact a(3n+2) identity and the mod-27 family")
def test_legacy_congruences():
    parts = [
        lab.check_progression(lab.gen_p(5000), 5, 4, 5, 5000),
        lab.check_progression(lab.gen_p(5000), 7, 5, 7, 5000),
        lab.check_progression(lab.gen_p(5000), 11, 6, 11, 5000),
        lab.check_progression(lab.gen_a(5000), 3, 2, 3, 5000),
        lab.verify_chan_identity(200),
        lab.check_progression(lab.gen_b(5000), 5, 4, 5, 5000),
        lab.check_progression(lab.gen_b(5000), 9, 7, 9, 5000),
        lab.verify_lin_family_alpha0(20),
    ]
    parts += [lab.check_progression(lab.gen_b(5000), 7, i, 7, 5000) for i in (2, 3, 4, 6)]
    failed = [p.claim for p in parts if not p.passed]
    report(10, not failed, ", ".join(failed))


@pytest.mark.criterion(11, "randomized property tests")
def test_properties():
    # each call runs a full hypothesis search
    series_props.test_ring_laws()
    series_props.test_extract_reassembly()
    series_props.test_modular_backend_agrees()
    dissector_props.test_oracle_contract()
    lab_props.test_backends_agree_property()
    report(11, True)
