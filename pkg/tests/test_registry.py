import json
from fractions import Fraction

import pytest

from apostol_lab.registry import (
    CORRECTIONS,
    FAIL,
    PASS,
    PASS_CORRECTED,
    SKIP,
    THEOREM_IDS,
    IdentityReport,
    Sample,
    default_samples,
    reports_to_json,
    run_suite,
    summarize,
    verify_identity,
)

F = Fraction
REPORT_FIELDS = {"theorem", "params", "status", "left", "right", "note"}


def test_da5_example():
    r = verify_identity("da-5", Sample("kronecker:-4", F(1), None, 10))
    assert r.status == PASS
    assert len(r.left) == 11 and r.left == r.right


@pytest.mark.parametrize("z", [F(1), F(2), F(1, 2)])
def test_binomial_transfer_examples(z):
    for chi in ("trivial", "kronecker:-3"):
        assert verify_identity("da-binom", Sample(chi, F(2), F(3, 2), 8, z)).status == PASS
        assert verify_identity("ch-binom", Sample(chi, F(-3), F(2), 8, z)).status == PASS


def test_final_bch_example_records_status():
    r = verify_identity("final-bch", Sample("kronecker:-3", F(2), None, 6))
    assert r.status == PASS_CORRECTED
    assert "final-bch" in r.note


def test_literal_failure_is_reported_with_correction():
    r = verify_identity("da-2", Sample("kronecker:-4", F(2), F(3, 2), 6))
    assert r.status == PASS_CORRECTED
    assert CORRECTIONS["da-2"] in r.note


def test_pole_is_skip_not_fail():
    r = verify_identity("da-2", Sample("trivial", F(1, 2), F(2), 4))
    assert r.status == SKIP and r.note.startswith("precondition:")


def test_f3_is_literal_only_at_lambda_one():
    assert verify_identity("f3", Sample("kronecker:-3", F(1), F(1), 6)).status == PASS
    assert verify_identity("f3", Sample("kronecker:-3", F(2), F(1), 6)).status == PASS_CORRECTED


def test_unknown_theorem():
    with pytest.raises(KeyError):
        verify_identity("da-99", Sample("trivial", F(1), None))
    with pytest.raises(KeyError):
        default_samples("da-99")


def test_every_corrected_theorem_is_documented():
    reports = run_suite(THEOREM_IDS, lambda t: default_samples(t, max_n=4))
    for r in reports:
        assert r.status != FAIL, (r.theorem, r.params, r.note)
        if r.status == PASS_CORRECTED:
            assert r.theorem in CORRECTIONS
    assert {r.theorem for r in reports} == set(THEOREM_IDS)


def test_report_schema_and_json():
    reports = run_suite(("da-5", "f3"), lambda t: default_samples(t, characters=["kronecker:-3"], max_n=3))
    data = json.loads(reports_to_json(reports))
    assert all(set(d) == REPORT_FIELDS for d in data)
    assert [IdentityReport(**d) for d in data] == reports


def test_suite_is_deterministic():
    make = lambda t: default_samples(t, characters=["trivial", "mod:3:1"], max_n=4)
    theorems = ("ch-binom", "da-binom", "final-bch")
    a = run_suite(theorems, make)
    b = run_suite(tuple(reversed(theorems)), make, workers=2)
    assert reports_to_json(a) == reports_to_json(b)
    assert [r.theorem for r in a][0] == "da-binom"


def test_default_sample_shapes():
    assert all(s.lam == 1 and s.q is None for s in default_samples("da-4"))
    assert all(s.q is not None for s in default_samples("da-2"))
    assert all(s.q is None for s in default_samples("da-3"))
    assert all(s.z is not None for s in default_samples("ch-binom"))
    assert {s.chi for s in default_samples("final-bch")} == {"trivial", "kronecker:-3", "mod:3:1"}


def test_sample_describe():
    assert Sample("trivial", F(1, 2), None, 5, F(2)).describe() == {
        "chi": "trivial", "lambda": "1/2", "q": "limit1", "max_n": "5", "z": "2"
    }


def test_summarize():
    reports = [IdentityReport("da-4", {}, PASS), IdentityReport("da-4", {}, SKIP)]
    assert summarize(reports) == {PASS: 1, PASS_CORRECTED: 0, FAIL: 0, SKIP: 1}
