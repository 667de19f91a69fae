import json
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import a_dp, b_dp, eta_product_dp, p_dp, v3
from qdissect.dissector import dissect_chain, rep_for_b, rep_to_series
from qdissect.lab import (
    B547,
    check_congruence_identity,
    check_progression,
    gen_a,
    gen_b,
    gen_p,
    lin2_rhs,
    lin3_rhs,
    lin_family_index,
    verify_b547,
    verify_chan_identity,
    verify_lin_family_alpha0,
    verify_lin_identity,
    verify_poly_1_minus_x_20,
)
from qdissect.report import MAX_VIOLATIONS, CheckReport, combine

# published value of b(547)
PUBLISHED_B547 = 2135474526556068875092854278074796547960


# -- generating functions -----------------------------------------------------------

def test_gen_b_values():
    b = gen_b(6).integer_coeffs(0, 6)
    assert b == b_dp(6) == [1, 2, 7, 14, 35, 66]
    assert gen_b(300).integer_coeffs(0, 300) == b_dp(300)


def test_gen_b_547():
    assert gen_b(548).coefficient(547) == PUBLISHED_B547 == B547


def test_gen_a_values():
    a = gen_a(5).integer_coeffs(0, 5)
    assert a == a_dp(5) == [1, 1, 3, 4, 9]
    assert a[2] % 3 == 0


def test_gen_p_values():
    p = gen_p(200).integer_coeffs(0, 200)
    assert p == p_dp(200)
    assert p[4] == 5 and p[5] == 7 and p[6] == 11


def test_gen_modular_backend_matches_exact():
    for gen in (gen_p, gen_a, gen_b):
        exact = gen(2000)
        assert gen(2000, 2187) == exact.reduce_mod(2187)


# -- check_progression ------------------------------------------------------------

def test_progression_b_mod_5():
    r = check_progression(gen_b(1000), 5, 4, 5, 1000)
    assert r.passed and r.checked == 200


def test_progression_81n_61_mod_729():
    r = check_progression(gen_b(20000), 81, 61, 729, 20000)
    assert r.passed and r.checked == 247


def test_progression_failure_reported():
    r = check_progression(gen_b(100), 3, 0, 3, 100)
    assert not r.passed
    assert r.violations[0] == (0, 1)
    assert len(r.violations) <= MAX_VIOLATIONS
    assert r.status == "fail"


def test_progression_limit_beyond_precision():
    with pytest.raises(ValueError):
        check_progression(gen_b(50), 5, 4, 5, 51)


def test_progression_modulus_must_divide_backend():
    with pytest.raises(ValueError):
        check_progression(gen_b(50, 9), 5, 4, 5, 50)


# -- identities -------------------------------------------------------------------

def test_lin_identities_at_300():
    assert verify_lin_identity(7, 300).passed
    assert verify_lin_identity(34, 300).passed


def test_lin_identity_explicit():
    b = gen_b(81 * 300 + 7)
    assert check_congruence_identity(b.extract(81, 7), lin2_rhs(300), 81, 300).passed
    b = gen_b(81 * 300 + 34)
    assert check_congruence_identity(b.extract(81, 34), lin3_rhs(300), 81, 300).passed


def test_lin_identity_backends_agree():
    exact = verify_lin_identity(34, 60, None)
    mod = verify_lin_identity(34, 60, 81)
    assert exact == mod and exact.passed


def test_lin_identity_wrong_constant_fails():
    b = gen_b(81 * 50 + 7)
    assert not check_congruence_identity(b.extract(81, 7), lin3_rhs(50), 81, 50).passed


def test_self_identity():
    s = gen_b(40)
    assert check_congruence_identity(s, s, 7, 40).passed


def test_chan_identity():
    r = verify_chan_identity(200)
    assert r.passed and r.checked == 200
    assert gen_a(3).coefficient(2) == 3


def test_chan_rhs_against_dp():
    a = a_dp(3 * 60 + 2)
    assert a[2::3][:60] == [3 * x for x in eta_product_dp({1: -4, 2: -4, 3: 3, 6: 3}, 60)]


def test_b547_report():
    r = verify_b547()
    assert r.passed
    assert {s.claim for s in r.subchecks} == {"b547-value", "b547-v3", "b547-factors"}
    assert v3(PUBLISHED_B547) == 7
    assert PUBLISHED_B547 == 2 ** 3 * 3 ** 7 * 5 * 41 * 61 * 151 * 11909 * 5427748132276664632973303


def test_lin_family_index():
    assert lin_family_index(0, 1, 0) == 898
    assert 7 ** 1 * (7 * 0 + 1) + (7 ** 2 - 1) // 12 == 11
    assert lin_family_index(0, 6, 19) == 81 * (49 * 19 + 46) + 7


def test_lin_family_alpha0():
    assert verify_lin_family_alpha0(20).passed


def test_lin_family_backends_agree_on_b898():
    assert gen_b(899).coefficient(898) % 27 == gen_b(899, 27).coefficient(898)
    assert verify_lin_family_alpha0(2, None) == verify_lin_family_alpha0(2, 27)


def test_poly20():
    r = verify_poly_1_minus_x_20()
    assert r.passed and r.checked == 21
    assert math.comb(20, 10) == 184756 and 184756 % 9 == 4
    assert math.comb(20, 0) % 9 == 1


# -- invariants -------------------------------------------------------------------

@pytest.mark.parametrize("gen,m,r,mod", [
    (gen_p, 5, 4, 5), (gen_p, 7, 5, 7), (gen_p, 11, 6, 11),
    (gen_a, 3, 2, 3),
    (gen_b, 5, 4, 5), (gen_b, 7, 2, 7), (gen_b, 7, 3, 7), (gen_b, 7, 4, 7), (gen_b, 7, 6, 7),
    (gen_b, 9, 7, 9),
])
def test_classical_congruences(gen, m, r, mod):
    assert check_progression(gen(5000), m, r, mod, 5000).passed


def test_81n_61_mod_243_and_729():
    b = gen_b(20000)
    assert check_progression(b, 81, 61, 243, 20000).passed
    assert check_progression(b, 81, 61, 729, 20000).passed


def test_step_two_rep_matches_extraction():
    rep = dissect_chain(rep_for_b(), 2).final
    assert rep_to_series(rep, 150) == gen_b(9 * 150 + 7).extract(9, 7).truncate(150)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 1500), st.sampled_from([3, 7, 9, 27, 81, 2187]))
def test_backends_agree_property(p, m):
    assert gen_b(p, m) == gen_b(p).reduce_mod(m)


# -- CheckReport --------------------------------------------------------------------

def test_report_invariants():
    ok = CheckReport("x", 5, (5, 4), 3)
    assert ok.passed and ok.status == "pass"
    bad = CheckReport("x", 5, (5, 4), 3, ((1, 2),))
    assert not bad.passed and bad.status == "fail"
    with pytest.raises(ValueError):
        CheckReport("x", 5, (5, 4), 0)


def test_report_json():
    r = check_progression(gen_b(100), 3, 0, 3, 100)
    data = json.loads(json.dumps(r.to_json()))
    assert set(data) == {"claim", "modulus", "progression", "checked", "status", "violations"}
    assert data["progression"] == [3, 0]
    assert data["status"] == "fail"
    assert data["violations"][0] == [0, "1"]
    assert verify_b547().to_json()["subchecks"][0]["claim"] == "b547-value"


def test_combine_caps_violations():
    parts = [CheckReport("p", 3, (3, 0), 5, tuple((i, 1) for i in range(8))) for _ in range(2)]
    c = combine("all", parts, 3)
    assert len(c.violations) == MAX_VIOLATIONS and c.checked == 5
