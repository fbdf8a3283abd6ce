import csv
import io
import json
from fractions import Fraction

import pytest

from apostol_lab import cli
from apostol_lab.apostol import DaeheeContext, daehee_numbers
from apostol_lab.classical import bernoulli2nd
from apostol_lab.dirichlet import kronecker_character
from apostol_lab.registry import THEOREM_IDS
from apostol_lab.rings import LogExpr, parse_scalar


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    return code, json.loads(out), err


def test_cauchy_table_ordinary(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "bernoulli2nd", "--x", "0", "--max-n", "4",
                             "--coefficients", "ordinary")
    assert code == 0
    assert [r["value"] for r in rows] == ["1", "1/2", "-1/12", "1/24", "-19/720"]


def test_cauchy_table_egf_default(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "bernoulli2nd", "--x", "0", "--max-n", "4")
    assert code == 0
    assert [Fraction(r["value"]) for r in rows] == bernoulli2nd(0, 4)


def test_daehee_reduction_table(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "apostol-daehee", "--chi", "trivial",
                             "--lambda", "1", "--q", "limit1", "--max-n", "3")
    assert code == 0
    assert [r["value"] for r in rows] == ["1", "-1/2", "2/3", "-3/2"]


def test_lambda_bernoulli_table(capsys):
    code, out, _ = run(capsys, "table", "--family", "lambda-bernoulli", "--lambda", "2", "--max-n", "1")
    assert code == 0
    values = [line.split("\t")[1] for line in out.strip().splitlines()]
    assert [LogExpr.parse(v) for v in values] == [LogExpr.symbol("Lλ"), 1 - 2 * LogExpr.symbol("Lλ")]


def test_json_round_trip(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "apostol-daehee", "--chi", "kronecker:-4",
                             "--lambda", "2", "--q", "3/2", "--max-n", "8")
    assert code == 0
    fresh = daehee_numbers(DaeheeContext(kronecker_character(-4), 2, Fraction(3, 2)), 8)
    assert [LogExpr.parse(r["value"]) for r in rows] == fresh
    for r in rows:
        assert set(r) == {"n", "value", "ring", "family", "params"}
    assert rows[0]["params"]["q"] == "3/2"


def test_cyclotomic_values_round_trip(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "gen-bernoulli-chi", "--chi", "mod:5:1",
                             "--lambda", "2", "--max-n", "3")
    assert code == 0
    from apostol_lab.classical import gen_chi_values
    from apostol_lab.dirichlet import parse_character

    fresh = gen_chi_values("bernoulli", parse_character("mod:5:1"), 2, 3)
    assert [parse_scalar(r["value"]) for r in rows] == fresh


def test_csv_output(capsys):
    code, out, _ = run(capsys, "table", "--family", "stirling1", "--v", "2", "--max-n", "4", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [r["value"] for r in rows] == ["0", "0", "1", "-3", "11"]


def test_polynomial_table(capsys):
    code, rows, _ = run_json(capsys, "table", "--family", "apostol-changhee", "--chi", "trivial",
                             "--lambda", "1", "--q", "1", "--z", "1", "--max-n", "1")
    assert code == 0 and rows[1]["value"] == "1/2"


def test_verify_da5(capsys):
    code, reports, err = run_json(capsys, "verify", "--theorem", "da-5", "--chi", "kronecker:-4", "--max-n", "10")
    assert code == 0
    assert reports and all(r["status"] == "PASS" for r in reports)
    assert "PASS=" in err


def test_verify_final_bch_has_status(capsys):
    code, reports, _ = run_json(capsys, "verify", "--theorem", "final-bch", "--q", "1", "--max-n", "4")
    assert code == 0
    assert reports and all("status" in r for r in reports)


def test_verify_writes_output_file(capsys, tmp_path):
    path = tmp_path / "report.json"
    code, _, _ = run(capsys, "verify", "--theorem", "da-4", "--max-n", "4", "--format", "json", "--output", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert {r["theorem"] for r in data} == {"da-4"}


def test_verify_all_covers_registry(capsys):
    code, reports, _ = run_json(capsys, "verify", "--theorem", "all", "--chi", "kronecker:-3",
                                "--lambda", "2", "--z", "1", "--max-n", "3")
    assert code == 0
    assert {r["theorem"] for r in reports} == set(THEOREM_IDS)


def test_padic_witt(capsys):
    code, rows, _ = run_json(capsys, "padic", "--check", "witt-bosonic", "--p", "5", "--n", "2", "--Nmax", "6")
    assert code == 0
    vals = [int(r["valuation"]) for r in rows]
    assert vals == sorted(vals)


def test_padic_witt_fermionic_alias(capsys):
    a = run_json(capsys, "padic", "--check", "witt-fermionic", "--p", "5", "--n", "1", "--Nmax", "3")
    b = run_json(capsys, "padic", "--check", "witt-fermonic", "--p", "5", "--n", "1", "--Nmax", "3")
    assert a == b and a[0] == 0


def test_padic_binom(capsys):
    code, rows, _ = run_json(capsys, "padic", "--check", "binom", "--p", "5", "--j", "2", "--Nmax", "6")
    assert code == 0
    assert rows[-1]["target"] == "1/3"


def test_padic_mahler(capsys):
    code, out, _ = run(capsys, "padic", "--check", "mahler", "--k", "4")
    assert code == 0
    assert "-1/30" in out


def test_padic_integral(capsys):
    code, rows, _ = run_json(capsys, "padic", "--check", "integral-daehee", "--chi", "kronecker:-3",
                             "--lambda", "6", "--q", "6", "--p", "5", "--n", "1", "--Nmin", "2", "--Nmax", "4")
    assert code == 0
    vals = [int(r["valuation"]) for r in rows]
    assert vals == sorted(set(vals))


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--family", "nope"],
        ["table", "--family", "bernoulli", "--lambda", "0.5"],
        ["verify", "--theorem", "da-99"],
        ["padic", "--check", "witt-bosonic", "--p", "5"],
        ["padic", "--check", "unknown", "--Nmax", "2"],
        ["table"],
        ["table", "--family", "apostol-daehee", "--chi", "bogus"],
    ],
)
def test_usage_errors(capsys, argv):
    code = cli.main(argv) if argv != ["table"] else None
    if code is None:
        with pytest.raises(SystemExit) as exc:
            cli.main(argv)
        code = exc.value.code
    capsys.readouterr()
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["table", "--family", "apostol-daehee", "--chi", "trivial", "--lambda", "1/2", "--q", "2"],
        ["padic", "--check", "binom", "--p", "4", "--j", "2", "--Nmax", "3"],
        ["padic", "--check", "integral-daehee", "--lambda", "2", "--q", "6", "--p", "5", "--n", "1", "--Nmax", "2"],
        ["padic", "--check", "witt-bosonic", "--p", "3", "--n", "1", "--Nmax", "30"],
    ],
)
def test_precondition_errors(capsys, argv):
    assert cli.main(argv) == 3
    capsys.readouterr()


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"family": "apostol-daehee", "chi": "trivial", "lambda": "1", "q": "limit1", "max-n": 3}))
    code, rows, _ = run_json(capsys, "--config", str(cfg), "table", "--family", "apostol-daehee")
    assert code == 0 and [r["value"] for r in rows] == ["1", "-1/2", "2/3", "-3/2"]
    cfg.write_text(json.dumps({"lambda": 0.5}))
    assert cli.main(["--config", str(cfg), "table", "--family", "bernoulli"]) == 2
    capsys.readouterr()


def test_truncation_env(capsys, monkeypatch):
    monkeypatch.setenv("APOSTOL_LAB_TRUNCATION", "24")
    assert DaeheeContext(kronecker_character(-4), 1).T == 24
    # the table grows the truncation to cover --max-n
    code, rows, _ = run_json(capsys, "table", "--family", "apostol-daehee", "--chi", "trivial",
                             "--lambda", "1", "--max-n", "30")
    assert code == 0 and len(rows) == 31
