"""Command-line interface: records, formats, exit codes, determinism."""

import json

import pytest

from fracbessel.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_double_primitive_record(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--nu", "0", "--alpha", "1",
            "--variant", "left-finite", "--endpoint", "1",
            "--function", "constant", "--x-min", "2", "--x-max", "2",
            "--n-points", "1", "--output", "json")
        assert code == 0
        records = json.loads(out)
        assert len(records) == 1
        assert records[0]["x"] == 2.0
        assert records[0]["value"] == pytest.approx(0.5, rel=1e-8)
        assert records[0]["converged"] is True
        assert set(records[0]) == {"x", "value", "error_estimate",
                                   "evaluations", "converged"}

    def test_csv_column_order(self, capsys):
        code, out, _ = run_cli(
            capsys, "eval", "--nu", "0.5", "--alpha", "0.75",
            "--variant", "left-zero", "--function", "power",
            "--function-params", '{"m": 1.0}',
            "--x-min", "1", "--x-max", "2", "--n-points", "3")
        assert code == 0
        header = out.splitlines()[0]
        assert header == "x,value,error_estimate,evaluations,converged"
        assert len(out.splitlines()) == 4

    def test_byte_stable_output(self, capsys):
        argv = ("eval", "--nu", "0.5", "--alpha", "0.75", "--variant", "left-zero",
                "--function", "gaussian", "--x-min", "0.5", "--x-max", "1.5",
                "--n-points", "3", "--output", "json")
        _, first, _ = run_cli(capsys, *argv)
        _, second, _ = run_cli(capsys, *argv)
        assert first == second

    def test_json_round_trip(self, capsys):
        _, out, _ = run_cli(
            capsys, "eval", "--nu", "0", "--alpha", "0.5", "--variant", "left-zero",
            "--function", "power", "--function-params", '{"m": 2.0}',
            "--x-min", "1", "--x-max", "1", "--n-points", "1", "--output", "json")
        records = json.loads(out)
        assert json.loads(json.dumps(records)) == records


class TestUsageErrors:
    def test_malformed_grid(self, capsys):
        code, _, err = run_cli(
            capsys, "eval", "--nu", "0", "--alpha", "1", "--variant", "left-zero",
            "--function", "constant", "--x-min", "3", "--x-max", "1",
            "--n-points", "2")
        assert code == 2
        assert "error" in err

    def test_missing_operator(self, capsys):
        code, _, err = run_cli(capsys, "eval", "--x-min", "1", "--x-max", "2",
                               "--n-points", "2")
        assert code == 2
        assert "--nu" in err

    def test_grid_outside_domain(self, capsys):
        code, _, _ = run_cli(
            capsys, "eval", "--nu", "0", "--alpha", "1",
            "--variant", "right-finite", "--endpoint", "2",
            "--function", "constant", "--x-min", "1", "--x-max", "3",
            "--n-points", "2")
        assert code == 2

    def test_unknown_function(self, capsys):
        code, _, err = run_cli(
            capsys, "eval", "--nu", "0", "--alpha", "1", "--variant", "left-zero",
            "--function", "nope", "--x-min", "1", "--x-max", "1", "--n-points", "1")
        assert code == 2
        assert "unknown function" in err


class TestConfigFile:
    def test_flags_override_file(self, capsys, tmp_path):
        cfg = tmp_path / "job.json"
        cfg.write_text(json.dumps({
            "nu": 0.0, "alpha": 1.0, "variant": "left-finite", "endpoint": 1.0,
            "function": "constant", "x_min": 2.0, "x_max": 2.0, "n_points": 1,
            "output": "json"}))
        code, out, _ = run_cli(capsys, "eval", "--config", str(cfg))
        assert code == 0
        assert json.loads(out)[0]["value"] == pytest.approx(0.5, rel=1e-8)
        # flag overrides the file's x grid
        code, out, _ = run_cli(capsys, "eval", "--config", str(cfg),
                               "--x-min", "3", "--x-max", "3")
        assert code == 0
        assert json.loads(out)[0]["value"] == pytest.approx(2.0, rel=1e-8)

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run_cli(
            capsys, "kernel", "--nu", "0", "--alpha", "1",
            "--variant", "right-finite", "--endpoint", "5", "--x", "1",
            "--x-min", "2", "--x-max", "4", "--n-points", "2",
            "--out", str(target))
        assert code == 0
        assert out == ""
        lines = target.read_text().splitlines()
        assert lines[0] == "x,value,error_estimate,evaluations,converged"
        assert float(lines[1].split(",")[1]) == pytest.approx(1.0, rel=1e-10)


class TestChecks:
    def test_group_check_passes(self, capsys):
        code, out, _ = run_cli(
            capsys, "group-check", "--nu", "0.5", "--alpha", "0.4", "--beta", "0.6",
            "--variant", "left-zero", "--function", "power",
            "--function-params", '{"m": 1.0}',
            "--x-min", "1.2", "--x-max", "1.2", "--n-points", "1",
            "--output", "json")
        assert code == 0
        rec = json.loads(out)[0]
        assert rec["pass"] is True
        assert rec["rel_diff"] < 1e-6
        assert set(rec) == {"identity", "lhs", "rhs", "abs_diff", "rel_diff", "pass"}

    def test_inverse_check(self, capsys):
        code, out, _ = run_cli(
            capsys, "inverse-check", "--nu", "0.5", "--variant", "right-finite",
            "--endpoint", "2", "--output", "json")
        assert code == 0
        assert all(r["pass"] for r in json.loads(out))

    def test_failed_check_exits_one(self, capsys):
        code, out, _ = run_cli(
            capsys, "inverse-check", "--nu", "0.5", "--variant", "right-finite",
            "--endpoint", "2", "--check-tol", "1e-30", "--output", "json")
        assert code == 1

    def test_taylor_check(self, capsys):
        code, out, _ = run_cli(
            capsys, "taylor", "--nu", "0.5", "--anchor", "2", "--terms", "2",
            "--poly", "[[1.0, 4.0]]", "--x-min", "0.5", "--x-max", "1.5",
            "--n-points", "2", "--output", "json")
        assert code == 0
        assert all(r["pass"] for r in json.loads(out))
