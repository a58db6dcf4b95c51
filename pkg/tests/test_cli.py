import json

from typer.testing import CliRunner

from rhythmbool import rhythm
from rhythmbool.cli import app


def test_eval_runs_the_pipeline():
    runner = CliRunner()
    result = runner.invoke(app, ["eval", "--n", "8", "(0,0,1,1,0,0,0,1)"])
    assert result.exit_code == 0
    assert "BtoI(v)  = (2,3,7)  [improper (rotate once)]" in result.output
    assert "Iav      = (0,2,5)" in result.output
    assert "Bav(v)   = (1,0,1,0,0,1,0,0)" in result.output
    assert "supp     = {0,2,5}" in result.output


def test_eval_json_and_small_cases():
    runner = CliRunner()
    result = runner.invoke(app, ["eval", "--n", "3", "--format", "json", "101"])
    assert result.exit_code == 0
    record = json.loads(result.output)
    assert record["bav"] == "(0,1,1)"
    assert record["proper"] is True
    assert record["iav"] == "(1,2)"

    result = runner.invoke(app, ["eval", "--n", "3", "(0,0,0)"])
    assert result.exit_code == 0
    assert "Bav(v)   = (0,0,0)" in result.output


def test_eval_rejects_bad_input():
    runner = CliRunner()
    assert runner.invoke(app, ["eval", "--n", "8", "(0,1)"]).exit_code == 2
    assert runner.invoke(app, ["eval", "--n", "2", "(0,1)"]).exit_code == 2


def test_poly_methods_agree():
    runner = CliRunner()
    outputs = set()
    for method in ("enumerate", "closed", "recurrence"):
        result = runner.invoke(app, ["poly", "--n", "4", "--method", method, "--basis", "y"])
        assert result.exit_code == 0
        outputs.add(result.output.strip())
    assert outputs == {"1+y_1+y_{-1}y_0+y_0y_1+y_{-1}y_1y_2+y_0y_1y_2"}


def test_poly_bases_and_coordinates():
    runner = CliRunner()
    result = runner.invoke(app, ["poly", "--n", "3", "--method", "enumerate", "--basis", "v"])
    assert result.output.strip() == "v_0+v_0v_2+v_1v_2"
    result = runner.invoke(app, ["poly", "--n", "3", "--basis", "v", "--coordinate", "1"])
    assert result.output.strip() == "v_1+v_0v_1+v_0v_2"
    result = runner.invoke(app, ["poly", "--n", "3", "--format", "json"])
    assert json.loads(result.output)["terms"] == [[], [1], [-1, 0], [-1, 1]]


def test_poly_bound_breach_exits_three():
    runner = CliRunner()
    result = runner.invoke(app, ["poly", "--n", "17", "--method", "enumerate"])
    assert result.exit_code == 3
    assert "bound-exceeded" in result.output


def test_verify_commands():
    runner = CliRunner()
    result = runner.invoke(app, ["verify", "parental", "--n", "6"])
    assert result.exit_code == 0
    assert result.output.splitlines() == ["PASS parental N=6 pairs=6", "1/1 checks passed"]

    result = runner.invoke(app, ["verify", "balanced", "--n", "3..10"])
    assert result.exit_code == 0
    assert "PASS balanced N=3 ones=4" in result.output
    assert result.output.strip().endswith("8/8 checks passed")

    result = runner.invoke(app, ["verify", "all", "--n", "3..4", "--format", "json"])
    assert result.exit_code == 0
    records = json.loads(result.output)
    assert len(records) == 16
    assert all(record["passed"] for record in records)


def test_verify_rejects_bad_arguments():
    runner = CliRunner()
    assert runner.invoke(app, ["verify", "nonsense", "--n", "6"]).exit_code == 2
    assert runner.invoke(app, ["verify", "parental", "--n", "9..3"]).exit_code == 2
    assert runner.invoke(app, ["verify", "parental", "--n", "6", "--jobs", "0"]).exit_code == 2


def test_verify_bound_from_environment(monkeypatch):
    runner = CliRunner()
    monkeypatch.setenv("RHYTHMBOOL_SWEEP_BOUND", "5")
    result = runner.invoke(app, ["verify", "commute", "--n", "6"])
    assert result.exit_code == 3
    assert "bound-exceeded" in result.output


def test_tables_command(tmp_path):
    runner = CliRunner()
    result = runner.invoke(app, ["tables", "5.2", "--format", "json"])
    assert result.exit_code == 0
    record = json.loads(result.output)
    assert [row["count"] for row in record["rows"]] == [1, 2, 4, 8, 16, 1]

    output = tmp_path / "tables" / "4.2.csv"
    result = runner.invoke(app, ["tables", "4.2", "--format", "csv", "--output", str(output)])
    assert result.exit_code == 0
    assert output.read_text(encoding="utf-8").splitlines()[0] == "v,BtoI(v),Iav(BtoI(v)),Bav(v)"

    assert runner.invoke(app, ["tables", "6.1"]).exit_code == 2


def test_verify_failure_still_prints_report(monkeypatch):
    monkeypatch.setattr(rhythm, "av_int", lambda a, b, n: (a + 2 * ((b - a) % n)) % n)
    runner = CliRunner()
    result = runner.invoke(app, ["verify", "closure", "--n", "5", "--format", "json"])
    assert result.exit_code == 1
    (record,) = json.loads(result.output)
    assert record["passed"] is False
    assert "rhythm" in record["counterexample"]

    result = runner.invoke(app, ["verify", "closure", "--n", "5"])
    assert result.exit_code == 1
    assert result.output.startswith("FAIL closure N=5")


def test_tables_use_loaded_settings(monkeypatch):
    runner = CliRunner()
    monkeypatch.setenv("RHYTHMBOOL_ENUMERATE_BOUND", "5")
    result = runner.invoke(app, ["tables", "4.5"])
    assert result.exit_code == 3
    assert "bound-exceeded" in result.output
    assert runner.invoke(app, ["tables", "4.3"]).exit_code == 0
