import io
import json

import pandas as pd
import pytest

import cli.commands
from cli.main import EXIT_USAGE, main
from dines.types import Indeterminate


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_feasible(capsys):
    code, out, _ = run(capsys, "check", "--case", "S13L00")
    assert code == 0
    assert "Scene: λ1 < λ2 < a1 < a2 < a3" in out
    assert out.strip().endswith("Verdict: feasible")


def test_check_by_parts_matches_name(capsys):
    _, by_name, _ = run(capsys, "check", "--case", "S13L00")
    code, by_parts, _ = run(capsys, "check", "--n", "2", "--subset", "1,3", "--placement", "0,0")
    assert code == 0
    assert by_parts == by_name


def test_check_infeasible(capsys):
    code, out, _ = run(capsys, "check", "--case", "S12L11")
    assert code == 1
    assert "infeasible at level 2 (step 3)" in out
    assert out.strip().endswith("pf")


def test_check_trace_json(capsys):
    code, out, _ = run(capsys, "check", "--case", "S13L00", "--trace", "--entries", "--json")
    assert code == 0
    report = json.loads(out)
    assert report["case"] == "S13L00"
    assert report["verdict"]["verdict"] == "feasible"
    assert report["stop_reason"] == "single_equation"
    assert [level["level"] for level in report["levels"]] == [0, 1, 2]
    assert report["levels"][0]["pivot"] == {"row": "norm", "I": [1, 3], "J": [2, 4], "K": []}
    assert report["levels"][2]["entries"] is not None


def test_check_text_trace(capsys):
    code, out, _ = run(capsys, "check", "--case", "S13L00", "--trace")
    assert code == 0
    assert "  pivot norm: I={1,3} J={2,4} P=2 Q=2" in out
    assert "Stop: single_equation" in out


def test_check_indeterminate_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(
        cli.commands, "decide", lambda *args, **kwargs: (Indeterminate(1, None, None), None)
    )
    code, out, _ = run(capsys, "check", "--case", "S13L00")
    assert code == 2
    assert "indeterminate at level 1" in out


def test_table_indeterminate_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(
        cli.commands, "decide", lambda *args, **kwargs: (Indeterminate(0, None, None), None)
    )
    code, _, _ = run(capsys, "table", "--n", "1")
    assert code == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "--case", "S13X00"],
        ["check"],
        ["check", "--case", "S13L00", "--n", "3"],
        ["check", "--n", "2", "--subset", "1,x", "--placement", "0,0"],
        ["table", "--n", "6"],
        ["oracle", "--all"],
        ["witness", "--case", "S13L11", "--a", "0,1,2", "--lambda", "1,3/2"],
        ["witness", "--case", "S13L11", "--a", "0,1,2"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert "error" in err


def test_parser_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == EXIT_USAGE
    with pytest.raises(SystemExit) as e:
        main(["witness", "--case", "S13L11", "--a", "0,one"])
    assert e.value.code == EXIT_USAGE


def test_table_csv_with_golden(capsys):
    code, out, err = run(capsys, "table", "--n", "2", "--format", "csv", "--golden")
    assert code == 0
    df = pd.read_csv(io.StringIO(out))
    assert list(df.columns) == ["case", "verdict", "fail_level", "pf", "duration_ms"]
    assert len(df) == 70
    assert (df["verdict"] == 1).sum() == 10
    assert "golden: 70/70 verdicts match" in err


def test_table_golden_mismatch(capsys, tmp_path, golden):
    broken = golden.copy()
    broken.loc[broken["case"] == "S1L00", "verdict"] = 1
    path = tmp_path / "golden.csv"
    broken.to_csv(path, index=False)
    code, _, err = run(capsys, "table", "--n", "2", "--golden", str(path))
    assert code == 1
    assert "verdict mismatch S1L00" in err


def test_table_json_echoes_config(capsys):
    code, out, _ = run(capsys, "table", "--n", "1", "--json", "--seed", "9")
    assert code == 0
    payload = json.loads(out)
    assert payload["config"]["seed"] == 9
    assert payload["config"]["n"] == 1
    assert len(payload["rows"]) == 9


def test_witness_text(capsys):
    code, out, _ = run(
        capsys, "witness", "--case", "S13L11", "--a", "0,1,2", "--lambda", "1/4,3/4"
    )
    assert code == 0
    assert "q² = (3/32,3/16,35/32)" in out
    assert "Σ ε·q²: 3/32 - 3/16 + 35/32 = 1" in out
    assert "U(λ) = λ^2 - λ + 3/16" in out
    assert "Placement matched" in out
    assert "Direct solve agrees: True" in out


def test_witness_negative_values_json(capsys):
    code, out, _ = run(
        capsys, "witness", "--case", "S123L12", "--a=-1,0,1", "--lambda=-1/2,1/2", "--json"
    )
    assert code == 0
    report = json.loads(out)
    assert report["lambda"] == ["-1/2", "1/2"]
    assert report["qsq"] == ["3/8", "1/4", "3/8"]
    assert report["matched"] is True
    assert report["oracle_agrees"] is True


def test_witness_sampled_instance(capsys):
    code, out, _ = run(capsys, "witness", "--case", "S2L03", "--index", "3")
    assert code == 0
    assert "Placement matched" in out


def test_witness_infeasible_case(capsys):
    code, out, err = run(capsys, "witness", "--case", "S1L00")
    assert code == 1
    assert out == ""
    assert "no witness" in err


def test_enumerate_text(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "2")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert lines[0] == "L00\t0,0\t(-inf, a1) (-inf, a1)"
    assert lines[-1] == "L33\t3,3\t(a3, inf) (a3, inf)"


def test_enumerate_json(capsys):
    code, out, _ = run(capsys, "enumerate", "--n", "1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert [p["name"] for p in payload["placements"]] == ["L0", "L1", "L2"]


def test_oracle_single_case_is_deterministic(capsys):
    argv = ["oracle", "--case", "S13L11", "--samples", "3", "--seed", "1"]
    code, first, _ = run(capsys, *argv)
    assert code == 0
    _, second, _ = run(capsys, *argv)
    assert first == second

    lines = [json.loads(line) for line in first.splitlines()]
    assert lines[0]["case"] == "S13L11"
    assert len(lines[0]["samples"]) == 3
    assert "lambda" in lines[0]["samples"][0]
    assert lines[-1]["summary"]["agreements"] == 1


def test_oracle_all_text(capsys):
    code, out, _ = run(
        capsys, "oracle", "--all", "--n", "1", "--samples", "2", "--format", "text"
    )
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 10
    assert all("\tagree\t" in line for line in lines[:-1])
    assert lines[-1].startswith("9/9 agreements")


def test_output_file(capsys, tmp_path):
    path = tmp_path / "out" / "check.txt"
    code, out, _ = run(capsys, "check", "--case", "S13L00", "--output", str(path))
    assert code == 0
    assert out == ""
    assert "Verdict: feasible" in path.read_text(encoding="utf-8")


def test_oracle_json_echoes_config(capsys):
    code, out, _ = run(capsys, "oracle", "--case", "S13L22", "--samples", "2", "--seed", "42")
    assert code == 0
    last = json.loads(out.splitlines()[-1])
    assert last["summary"]["cases"] == 1
    assert last["config"]["command"] == "oracle"
    assert last["config"]["seed"] == 42
    assert last["config"]["samples"] == 2
    assert last["config"]["subset"] == [1, 3]
    assert last["config"]["placement"] == [2, 2]


def test_table_text_leaves_feasible_fail_level_blank(capsys):
    code, out, _ = run(capsys, "table", "--n", "1")
    assert code == 0
    assert "<NA>" not in out
    feasible = [line.split() for line in out.splitlines() if line.split()[:2] == ["S1L2", "1"]]
    assert len(feasible) == 1
    assert feasible[0][2] == "False"


def _recording_decide(monkeypatch):
    calls = []
    real = cli.commands.decide

    def recording(*args, **kwargs):
        calls.append(kwargs)
        return real(*args, **kwargs)

    monkeypatch.setattr(cli.commands, "decide", recording)
    return calls


def test_check_csv_decides_once(capsys, monkeypatch):
    calls = _recording_decide(monkeypatch)
    code, out, _ = run(capsys, "check", "--case", "S12L11", "--format", "csv")
    assert code == 1
    assert len(calls) == 1
    df = pd.read_csv(io.StringIO(out))
    assert df.loc[0, "case"] == "S12L11"
    assert df.loc[0, "fail_level"] == 2
    assert bool(df.loc[0, "pf"])


def test_witness_passes_seed_to_symbolic_decision(capsys, monkeypatch):
    calls = _recording_decide(monkeypatch)
    code, _, _ = run(capsys, "witness", "--case", "S2L03", "--index", "3", "--seed", "7")
    assert code == 0
    assert calls[0]["seed"] == 7
