import json
import subprocess
import sys

import numpy as np
import pytest

from masseyvar import cli, masseyq
from masseyvar.groups import cyclic, dihedral


def run(argv, capsys):
    code = cli.main(argv)
    return json.loads(capsys.readouterr().out), code


@pytest.mark.parametrize(
    "argv, code",
    [
        (["decide", "313", "457", "521"], 0),
        (["decide", "-1", "-1", "3"], 1),
        (["decide", "2", "7", "2"], 0),
        (["decide", "0", "1", "1"], 2),
        (["decide", "1", "two", "1"], 2),
        (["local", "-1", "-1", "3", "--place", "inf"], 1),
        (["local", "2", "7", "2", "--place", "7"], 0),
        (["local", "1", "1", "1", "--place", "2"], 0),
        (["local", "1", "1", "1", "--place", "6"], 2),
        (["ff-sweep", "3"], 0),
        (["ff-sweep", "5"], 0),
        (["ff-sweep", "4"], 2),
        (["verify-torsor"], 0),
        (["verify-torsor", "--only", "quotient"], 0),
        (["verify-torsor", "--mutate"], 1),
        (["integral-search", "1", "1", "1", "--primes", "2", "--height", "1"], 0),
        (["integral-search", "313", "457", "521", "--primes", "2,313,457,521", "--height", "5"], 1),
    ],
)
def test_exit_codes(argv, code, capsys):
    report, got = run(["--no-timing"] + argv, capsys)
    assert got == code, report
    assert report["command"] == argv
    assert "timing" not in report


def test_decide_report_contents(capsys):
    report, _ = run(["decide", "313", "457", "521"], capsys)
    v = report["verdict"]
    assert v["defined"] and v["vanishes"]
    assert [row["place"] for row in v["local"]] == ["inf", "2", "313", "457", "521"]
    assert all(row["ab"] == row["bc"] == 1 for row in v["local"])
    assert v["certificate"] == {"x": "54208", "y": ["18", "5", "24", "3"]}
    assert "seconds" in report["timing"]

    report, _ = run(["decide", "-1", "-1", "3", "--no-certificate"], capsys)
    assert {"place": "inf", "pair": "ab", "symbol": -1} in report["verdict"]["obstructions"]
    assert report["verdict"]["search"] is None

    report, _ = run(["decide", "18", "-4/9", "2"], capsys)
    assert report["inputs"]["square_classes"] == [2, -1, 2]


def test_torsor_only_runs_one(capsys):
    report, _ = run(["verify-torsor", "--only", "quotient"], capsys)
    assert report["verdict"]["checks"] == {"quotient": True}
    report, _ = run(["verify-torsor", "--mutate"], capsys)
    assert not any(report["verdict"]["checks"].values())


def _write(tmp_path, G, name):
    path = tmp_path / f"{name}.txt"
    path.write_text(G.to_text())
    return str(path)


def test_massey_group_commands(tmp_path, capsys):
    z4 = _write(tmp_path, cyclic(4), "z4")
    report, code = run(["massey-group", z4, "0101", "0101", "0101", "--dwyer", "--brute-force"], capsys)
    assert code == 0 and report["verdict"]["massey"]["status"] == "containsZero"
    assert report["verdict"]["u4_lift"][1] == 41 and report["verdict"]["agreement"]
    z2 = _write(tmp_path, cyclic(2), "z2")
    report, code = run(["massey-group", z2, "01", "01", "01", "--dwyer"], capsys)
    assert code == 1 and report["verdict"]["massey"]["status"] == "undefined"
    d4 = _write(tmp_path, dihedral(4), "d4")
    report, code = run(["massey-group", d4, "01010101", "00001111", "01011010", "--dwyer", "--brute-force"], capsys)
    assert report["verdict"]["agreement"] is True and code in (0, 1)


def test_massey_group_errors(tmp_path, capsys):
    z4 = _write(tmp_path, cyclic(4), "z4")
    assert run(["massey-group", z4, "0100", "0101", "0101"], capsys)[1] == 2  # not a homomorphism
    assert run(["massey-group", z4, "010", "0101", "0101"], capsys)[1] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n1\n0 1\n1 1\n")
    assert run(["massey-group", str(bad), "01", "01", "01"], capsys)[1] == 2
    assert run(["massey-group", str(tmp_path / "missing.txt"), "01", "01", "01"], capsys)[1] == 2


def test_reports_byte_identical_apart_from_timing(capsys, monkeypatch):
    monkeypatch.setattr(masseyq, "PARALLEL_SHELL_MIN", 1)
    outputs = []
    for workers in ("1", "3", "1"):
        monkeypatch.setenv(masseyq.WORKERS_ENV, workers)
        cli.main(["--no-timing", "decide", "313", "457", "521", "--height", "30"])
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1] == outputs[2]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "masseyvar", "--no-timing", "local", "2", "7", "2", "--place", "7"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"]["solvable"] is True


def test_usage_error_exit_code(capsys):
    assert cli.main(["decide", "1"]) == 2
