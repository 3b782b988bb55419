from fractions import Fraction

import pytest

from genlcm.arithfun import build_function_table
from genlcm.builders import build_f1_matrix, build_f2_matrix
from genlcm.verify import (
    CLAIMS,
    SuiteConfig,
    UnknownClaimError,
    check_claim,
    oracle_f1_entry,
    oracle_f2_entry,
    tau_shortcut_entry,
    random_user_table,
    reports_to_jsonl,
    run_suite,
    summary_table,
)

from conftest import PRESET_KINDS, preset_table

ONE = build_function_table("one", 10)
ID = build_function_table("id", 10)
LAM = build_function_table("liouville", 10)


def test_oracle_examples():
    assert oracle_f1_entry(3, 1, 1, ONE) == 3
    assert oracle_f1_entry(4, 2, 2, ID) == 6
    for g in (ONE, ID, LAM):
        assert oracle_f1_entry(3, 2, 3, g) == 0
    assert oracle_f2_entry(4, 1, 3, ONE) == 0
    assert oracle_f2_entry(4, 2, 3, ONE) == 1
    assert oracle_f2_entry(4, 3, 4, LAM) == 0


@pytest.mark.parametrize("kind", PRESET_KINDS)
def test_oracles_match_builders_to_40(kind):
    g = preset_table(kind, 40)
    for n in range(1, 41, 3):
        f1, f2 = build_f1_matrix(n, g), build_f2_matrix(n, g)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                assert oracle_f1_entry(n, i, j, g) == f1.entry(i, j)
                assert oracle_f2_entry(n, i, j, g) == f2.entry(i, j)


def test_core_run_all_pass():
    reports = run_suite(SuiteConfig(max_n=8, g_kinds=("one", "id", "liouville")))
    assert reports and all(r.passed for r in reports)
    assert {r.claim for r in reports} == set(CLAIMS)


def test_f2_det_zero_claim():
    reports = run_suite(SuiteConfig(max_n=12, g_kinds=("one", "id", "liouville"), claims=("f2_det_zero",)))
    assert len(reports) == 36 and all(r.passed and r.mismatch is None for r in reports)


def test_single_cell():
    r = check_claim("f1_factorization", 1, ONE)
    assert (r.claim, r.n, r.g_kind, r.status, r.mismatch) == ("f1_factorization", 1, "one", "pass", None)


def test_phi_breaks_the_factorization():
    phi = build_function_table("phi", 4)
    r = check_claim("f1_factorization", 4, phi)
    assert r.status == "fail"
    i, j, lhs, rhs = r.mismatch
    # first row-major difference at [1,2] = 2: phi(2) * S(2) = 2 vs phi(2) + phi(4) = 3
    assert (i, j, lhs, rhs) == (1, 2, Fraction(2), Fraction(3))


def test_failed_reports_carry_mismatch():
    phi = build_function_table("phi", 8)
    for claim in ("f1_factorization", "f1_oracle", "f1_det"):
        r = check_claim(claim, 8, phi)
        assert r.status == "fail" and r.mismatch is not None


def test_divergence_claims_record_without_failing():
    r = check_claim("tau_shortcut_divergence", 4)
    assert r.passed and r.expected_divergence and r.mismatch is not None
    assert tau_shortcut_entry(4, 2, 2) == 1
    assert build_f2_matrix(4, ONE).entry(2, 2) == 2
    # at n = 2 the shortcut happens to agree everywhere
    r2 = check_claim("tau_shortcut_divergence", 2)
    assert r2.passed and not r2.expected_divergence


def test_deterministic_output():
    cfg = dict(max_n=6, g_kinds=("one", "random0", "random1"), seed=7)
    a = reports_to_jsonl(run_suite(SuiteConfig(**cfg)))
    b = reports_to_jsonl(run_suite(SuiteConfig(**cfg)))
    assert a == b
    assert summary_table(run_suite(SuiteConfig(**cfg))).endswith("0 failed\n")


def test_random_user_tables():
    g = random_user_table(3, 0, 30)
    assert g == random_user_table(3, 0, 30)
    assert g != random_user_table(3, 1, 30)
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29):
        v = g(p)
        assert v != 0 and abs(v.numerator) <= 3 and 1 <= v.denominator <= 3


def test_jsonl_format():
    line = reports_to_jsonl([check_claim("f1_factorization", 4, build_function_table("phi", 4))])
    assert line == (
        '{"check": "entries", "claim": "f1_factorization", "g_kind": "phi", '
        '"mismatch": {"i": 1, "j": 2, "lhs": "2", "rhs": "3"}, "n": 4, "status": "fail"}\n'
    )


def test_config_errors():
    with pytest.raises(UnknownClaimError):
        SuiteConfig(claims=("not_a_claim",))
    with pytest.raises(UnknownClaimError):
        check_claim("nope", 3)
    with pytest.raises(ValueError):
        SuiteConfig(max_n=0)
    with pytest.raises(ValueError):
        check_claim("f1_det", 3)
