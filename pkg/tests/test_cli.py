import csv
import io
import json
import subprocess
import sys

import pytest

from qec_pathcount.cli import compute, run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def records(*argv):
    code, out, err = call(*argv, "--format", "json")
    assert code == 0, err
    return [json.loads(line) for line in out.splitlines()]


def test_count_record():
    (rec,) = records("count", "--d", "3", "--errors", "2")
    assert rec["outputs"]["count"] == "18"
    assert rec["inputs"] == {"d": 3, "errors": 2, "method": "dp", "both_axes": False}


def test_paths_record():
    (rec,) = records("paths", "--d", "3")
    assert rec["outputs"]["paths"] == "8"
    assert rec["outputs"]["ratio"] == pytest.approx(0.6667, abs=1e-4)


def test_fit_record():
    (rec,) = records("fit", "--p", "1e-4", "--d-min", "3", "--d-max", "101", "--model", "rotated")
    assert rec["outputs"]["A"] == pytest.approx(0.209, rel=0.01)
    assert rec["outputs"]["p_th"] == pytest.approx(0.0733, rel=0.01)


def test_counts_are_decimal_strings():
    (rec,) = records("count", "--d", "49")
    assert rec["outputs"]["count"] == "7767177110854874415531013664"


COMMANDS = [
    ("count", "--d", "7", "--both-axes"),
    ("paths", "--d", "9"),
    ("rate", "--d", "11", "--p", "1e-3", "--model", "unrotated"),
    ("bounds", "--d", "9", "--edge-constant", "0.6"),
    ("fit", "--d-max", "21", "--bound", "lower"),
    ("compare", "--p", "1e-4", "--qubits", "500"),
    ("compare", "--p", "3e-3", "--d-e", "20"),
    ("measure", "--p", "1e-4", "--pm", "1e-4", "--d", "11"),
    ("measure", "--p", "1e-4", "--pm", "1e-3", "--d", "7", "--M", "5"),
    ("mixture", "--d", "5", "--components", "0.9:1e-3,0.1:1e-4"),
    ("design", "--qubits", "199", "--px", "4e-4", "--pz", "1e-4"),
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_round_trip(argv):
    (rec,) = records(*argv)
    again = compute(rec["command"], rec["inputs"])
    assert again["outputs"] == rec["outputs"]
    assert again["warnings"] == rec["warnings"]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: " ".join(a))
def test_csv_matches_json(argv):
    (rec,) = records(*argv)
    code, out, _ = call(*argv, "--format", "csv")
    assert code == 0
    (row,) = list(csv.DictReader(io.StringIO(out)))
    for k, v in rec["outputs"].items():
        cell = row[f"out.{k}"]
        if isinstance(v, float):
            assert float(cell) == v
        else:
            assert cell == str(v)


@pytest.mark.parametrize("d,n", [(3, 2), (5, 3), (7, 4)])
def test_brute_force_method_agrees(d, n):
    (fast,) = records("count", "--d", str(d), "--errors", str(n))
    (slow,) = records("count", "--d", str(d), "--errors", str(n), "--method", "brute-force")
    assert fast["outputs"]["count"] == slow["outputs"]["count"]


def test_oracle_cap_env(monkeypatch):
    monkeypatch.setenv("QEC_PATHCOUNT_ORACLE_CAP", "10")
    code, _, err = call("count", "--d", "5", "--method", "brute-force")
    assert code == 2
    assert "QEC_PATHCOUNT_ORACLE_CAP" in err


def test_regime_warning_and_strict():
    (rec,) = records("rate", "--d", "11", "--p", "1e-3")
    assert any("p*d^2" in w for w in rec["warnings"])
    (quiet,) = records("rate", "--d", "11", "--p", "1e-4")
    assert quiet["warnings"] == []
    code, _, err = call("rate", "--d", "41", "--p", "1e-3", "--strict")
    assert code == 2 and "p*d^2" in err
    (loose,) = records("rate", "--d", "41", "--p", "1e-3")
    assert loose["warnings"]


@pytest.mark.parametrize(
    "argv,code",
    [
        (("count", "--d", "4"), 2),
        (("count", "--d", "five"), 1),
        (("count", "--bogus", "3"), 1),
        (("teleport",), 1),
        (("rate", "--d", "5", "--p", "1.5"), 2),
        (("mixture", "--d", "5", "--components", "0.5:1e-3,0.4:1e-4"), 2),
        (("mixture", "--d", "5", "--components", "0.5-1e-3"), 2),
        (("measure", "--p", "1e-4", "--pm", "1e-4", "--d", "5", "--M", "4"), 2),
        (("compare", "--p", "1e-4"), 2),
        (("design", "--qubits", "99", "--px", "0.5", "--pz", "1e-4"), 2),
    ],
)
def test_exit_codes(argv, code):
    got, _, err = call(*argv)
    assert got == code
    assert err.strip()


def test_mixture_weight_tolerance():
    code, _, _ = call("mixture", "--d", "5", "--components", "0.5:1e-3,0.5000000001:1e-4")
    assert code == 0
    code, _, err = call("mixture", "--d", "5", "--components", "0.5:1e-3,0.50001:1e-4")
    assert code == 2 and "sum" in err


def test_measure_auto_unrotated_needs_more_than_d():
    (rec,) = records("measure", "--p", "1e-4", "--pm", "1e-4", "--d", "11", "--model", "unrotated")
    assert rec["outputs"]["M"] == "none" or rec["outputs"]["M"] > 11


def test_sweep_order_and_rerun():
    recs = records("sweep", "--vary", "d=3:15:2", "--jobs", "3", "paths")
    assert [r["inputs"]["d"] for r in recs] == list(range(3, 16, 2))
    for r in recs:
        assert compute(r["command"], r["inputs"])["outputs"] == r["outputs"]


def test_sweep_log_range_and_format_after_target():
    code, out, _ = call("sweep", "--vary", "p=log:1e-5:1e-3:3", "rate", "--d", "5", "--format", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [float(r["in.p"]) for r in rows] == pytest.approx([1e-5, 1e-4, 1e-3])


def test_sweep_bad_parameter():
    code, _, err = call("sweep", "--vary", "q=1,2", "paths")
    assert code == 1 and "--q" in err


def test_table_output():
    code, out, _ = call("paths", "--d", "5")
    assert code == 0
    assert "paths" in out and "52" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "qec_pathcount", "count", "--d", "3", "--errors", "2", "--format", "json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["outputs"]["count"] == "18"
