import json
import subprocess
import sys

import pytest

from unexpected import __version__
from unexpected.cli import EXIT_DOWNGRADE, EXIT_GOLDEN, EXIT_OK, EXIT_USAGE, cells_csv, run
from unexpected.pointsets import PointSet


def report(tmp_path, argv, name="out.json"):
    out = tmp_path / name
    code = run(["--quiet", *argv, "--out", str(out)])
    return code, json.loads(out.read_text()) if out.exists() else None


def test_bad_flag_is_a_usage_error(capsys):
    assert run(["detect", "--bad-flag"]) == EXIT_USAGE
    assert "usage" in capsys.readouterr().err


def test_missing_command_is_a_usage_error():
    assert run([]) == EXIT_USAGE


def test_invalid_values_are_usage_errors(tmp_path):
    assert run(["--quiet", "detect", "--system", "B", "--rank", "3", "--d", "2", "--m", "3"]) == EXIT_USAGE
    assert run(["--quiet", "detect", "--system", "G2", "--d", "4", "--m", "3"]) == EXIT_USAGE
    bad = tmp_path / "bad.csv"
    bad.write_text("1,0\n1,0,0\n")
    assert run(["--quiet", "detect", "--points", str(bad), "--d", "4", "--m", "3"]) == EXIT_USAGE
    assert run(["--quiet", "search", "--system", "B", "--rank", "3", "--dmin", "5", "--dmax", "3"]) == EXIT_USAGE


def test_detect_report(tmp_path):
    code, rep = report(tmp_path, ["detect", "--system", "B", "--rank", "3", "--d", "4", "--m", "3", "--form"])
    assert code == EXIT_OK
    assert rep["version"] == __version__ and rep["command"] == "detect"
    assert rep["config"]["seed"] == 0 and rep["config"]["mode"] == "hybrid"
    res = rep["result"]
    assert (res["edim"], res["adim"], res["unexpected"], res["certificate"]) == (0, 1, True, "certified")
    assert len(res["form"]) == 1


def test_reports_are_byte_stable(tmp_path):
    argv = ["search", "--system", "D", "--rank", "4", "--dmax", "4"]
    run(["--quiet", *argv, "--out", str(tmp_path / "a.json")])
    run(["--quiet", "--threads", "2", *argv, "--out", str(tmp_path / "b.json")])
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


def test_search_on_a_system_finds_nothing(tmp_path):
    code, rep = report(tmp_path, ["search", "--system", "A", "--rank", "4", "--dmax", "6"])
    assert code == EXIT_OK
    assert rep["result"]["unexpected"] == []
    assert all(c["certificate"] == "certified" for c in rep["result"]["cells"])


def test_search_csv_and_store(tmp_path):
    csv = tmp_path / "cells.csv"
    store = tmp_path / "store.jsonl"
    argv = ["search", "--system", "B", "--rank", "3", "--dmax", "5", "--csv", str(csv), "--store", str(store)]
    code, rep = report(tmp_path, argv)
    assert code == EXIT_OK and rep["result"]["unexpected"] == [[2, 4, 3, 0, 1]]
    lines = csv.read_text().splitlines()
    assert len(lines) == 1 + 10 and lines[0].startswith("label,n,d,m,edim,adim")
    assert store.exists() and len(store.read_text().splitlines()) == 10
    code, again = report(tmp_path, argv, "again.json")
    assert again == rep


def test_certify_flags_probabilistic_verdicts(tmp_path):
    argv = ["detect", "--system", "B", "--rank", "3", "--d", "4", "--m", "3", "--mode", "probabilistic"]
    code, rep = report(tmp_path, argv)
    assert code == EXIT_OK and rep["result"]["certificate"] == "probabilistic"
    code, _ = report(tmp_path, argv + ["--certify"], "c.json")
    assert code == EXIT_DOWNGRADE
    code, _ = report(tmp_path, ["detect", "--system", "B", "--rank", "3", "--d", "4", "--m", "3", "--certify"], "d.json")
    assert code == EXIT_OK


def test_points_round_trip(tmp_path):
    out = tmp_path / "h3.json"
    assert run(["--quiet", "points", "--system", "H3", "--out", str(out)]) == EXIT_OK
    Z = PointSet.load(out)
    assert len(Z) == 15
    code, rep = report(tmp_path, ["detect", "--points", str(out), "--d", "6", "--m", "5"])
    assert code == EXIT_OK and rep["result"]["adim"] == 1


def test_csv_points_with_field(tmp_path):
    pts = tmp_path / "pts.csv"
    pts.write_text("1,0,0\n0,1,0\n0,0,1\n1,(0)+(1)t,0\n")
    code, rep = report(tmp_path, ["detect", "--points", str(pts), "--field", "sqrt5", "--d", "2", "--m", "2"])
    assert code == EXIT_OK and rep["points"]["field"]


def test_form_and_duality(tmp_path):
    code, rep = report(tmp_path, ["form", "--system", "D", "--rank", "4", "--d", "3", "--m", "3"])
    assert code == EXIT_OK and rep["result"]["forms"][0]["bidegree"] == [3, 3]
    argv = ["duality", "--system", "B", "--rank", "3", "--d", "4", "--m", "3", "--sample-point=-6,-5,4", "--seed", "7"]
    code, rep = report(tmp_path, argv, "dual.json")
    assert code == EXIT_OK
    assert rep["result"]["tangent_cone_match"] and rep["result"]["swap_relation"] == "neither"
    assert rep["result"]["samples"][0]["point"] == ["-6", "-5", "4"]


def test_wlp_command(tmp_path):
    code, rep = report(tmp_path, ["wlp", "--twisted-cubic", "31", "--k", "3"])
    assert code == EXIT_OK and rep["result"]["verdict"]["fails"]
    code, rep = report(tmp_path, ["wlp", "--system", "B", "--rank", "3", "--k", "3", "--check-equivalence"], "e.json")
    assert code == EXIT_OK and rep["result"]["equivalence"]["unexpected"] is False


def test_reproduce_d4(tmp_path):
    code, rep = report(tmp_path, ["reproduce", "d4"])
    assert code == EXIT_OK and rep["result"]["match"]
    assert rep["result"]["unexpected"] == [[3, 3, 3, -2, 1], [3, 4, 4, 3, 4]]


def test_golden_mismatch_exit_code(tmp_path, monkeypatch):
    from unexpected import golden

    system, ranks, d_range, expected = golden.SCANS["d4"]
    monkeypatch.setitem(golden.SCANS, "d4", (system, ranks, d_range, expected[:1]))
    code, rep = report(tmp_path, ["reproduce", "d4"])
    assert code == EXIT_GOLDEN and rep["result"]["diff"]["extra"] == [[3, 4, 4, 3, 4]]


def test_cells_csv_is_empty_for_no_cells():
    assert cells_csv([]).splitlines() == ["label,n,d,m,edim,adim,unexpected,certificate"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "unexpected", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == __version__


@pytest.mark.slow
def test_reproduce_table1_subprocess(tmp_path):
    out = tmp_path / "t1.json"
    proc = subprocess.run(
        [sys.executable, "-m", "unexpected", "--quiet", "reproduce", "table1", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == EXIT_OK, proc.stderr
    assert json.loads(out.read_text())["result"]["match"]
