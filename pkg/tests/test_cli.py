import json
import math
import os
import subprocess
import sys
from pathlib import Path

import pytest

from ivgibbs.cli import main
from conftest import PUBLISHED_ROOTS

EXAMPLE_FLAGS = ["--J", "-1.85", "--Jp", "4.5", "--T", "2.6"]


def test_solve_text_output(capsys):
    assert main(["solve", *EXAMPLE_FLAGS]) == 0
    out = capsys.readouterr().out
    assert "3 symmetric root(s)" in out
    for want in ("0.03162216", "4.86622509", "26.9681161"):
        assert want in out


def test_solve_json_schema(capsys):
    assert main(["solve", *EXAMPLE_FLAGS, "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert set(body) == {"params", "convention_note", "roots", "nonsym", "prop51"}
    for got, want in zip((r["u"] for r in body["roots"]), PUBLISHED_ROOTS):
        assert got == pytest.approx(want, rel=1e-4)
    assert body["prop51"] == {"prediction": 1, "empirical": 3, "agree": False}


def test_solve_trivial_point(capsys):
    assert main(["solve", "--J", "0", "--Jp", "0", "--T", "1", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["roots"]) == 1
    assert body["roots"][0]["u"] == pytest.approx(1.0, rel=1e-10)
    assert body["roots"][0]["h"] == pytest.approx(0.0, abs=1e-10)


def test_beta_flag(capsys):
    assert main(["solve", "--J", "-1.85", "--Jp", "4.5", "--beta",
                 str(1 / 2.6), "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["params"]["T"] == pytest.approx(2.6, rel=1e-12)


def test_verify_subcommand(capsys):
    assert main(["verify", *EXAMPLE_FLAGS, "--n", "3", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["reports"]) == 3
    for rep in body["reports"]:
        assert rep["compat_max_error"] <= 1e-9
        assert rep["telescoping_gap"] <= 1e-9


def test_nonsym_subcommand(capsys):
    b = math.sqrt(11.0 / 6.0)
    atil = (6.0 / 7.0) * b ** 1.5
    assert main(["nonsym", "--J", str(math.log(atil)), "--Jp", str(0.5 * math.log(b)),
                 "--T", "1", "--grid", "40", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert any(abs(s["m"] - 3.0) < 1e-8 and abs(s["t"] - 0.5) < 1e-8
               for s in body["nonsym"])


def test_free_energy_point_and_curve(tmp_path, capsys):
    assert main(["free-energy", *EXAMPLE_FLAGS]) == 0
    out = capsys.readouterr().out
    assert out.count("root") == 3

    dest = tmp_path / "curve.csv"
    assert main(["free-energy", *EXAMPLE_FLAGS, "--root", "2",
                 "--T-range", "1.5:4:16", "--out", str(dest)]) == 0
    lines = dest.read_text().strip().split("\n")
    assert lines[0] == "T,beta,h,F,S_numeric,S_paper_formula"
    assert len(lines) == 17


def test_entropy_subcommand(capsys):
    assert main(["entropy", "--J", "0", "--Jp", "0", "--T", "1", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["branches"][0]["S_numeric"] == pytest.approx(math.log(2.0), abs=1e-8)


def test_scan_subcommand(tmp_path):
    dest = tmp_path / "scan.csv"
    assert main(["scan", "--axis", "Jp=0:1:5", "--J", "0", "--T", "1",
                 "--out", str(dest), "--format", "csv"]) == 0
    lines = dest.read_text().strip().split("\n")
    assert len(lines) == 6
    assert lines[0].startswith("J,Jp,T,beta,c,d,n_roots")


def test_scan_json_stdout(capsys):
    assert main(["scan", "--axis", "Jp=0:1:3", "--J", "0", "--T", "1",
                 "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload) == 3


def test_oracle_subcommand(capsys):
    assert main(["oracle", "--J", "0", "--Jp", "0", "--T", "1", "--n", "2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert set(body) == {"n", "Z_n", "compat_max_error", "telescoping_gap",
                         "free_energy_paper", "free_energy_physics"}
    assert body["Z_n"] == pytest.approx(128.0, rel=1e-12)

    assert main(["oracle", *EXAMPLE_FLAGS, "--n", "2", "--field", "ti-root=2"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["compat_max_error"] <= 1e-9


def test_findings_subcommand(tmp_path, capsys):
    dest = tmp_path / "findings.json"
    assert main(["findings", "--out", str(dest)]) == 0
    loaded = json.loads(dest.read_text())
    assert {e["id"] for e in loaded["entries"]} >= {
        "uniqueness-criterion-vs-root-count",
        "free-energy-sign-convention",
        "symmetric-reduction-coefficient",
    }


def test_usage_errors_exit_2(capsys):
    assert main(["solve", "--J", "1", "--Jp", "1"]) == 2    # missing temperature
    assert main(["solve", "--Jp", "1", "--T", "1"]) == 2    # missing coupling
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--J", "1", "--Jp", "1", "--T", "1", "--beta", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--J", "abc", "--Jp", "1", "--T", "1"])
    assert exc.value.code == 2


def test_config_file_defaults_and_flag_override(tmp_path, capsys):
    cfg = tmp_path / "point.cfg"
    cfg.write_text("J=-1.85\nJp=4.5\nT=2.6\n# comment line\n")
    assert main(["--config", str(cfg), "solve", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert len(body["roots"]) == 3
    # flags override config entries
    assert main(["--config", str(cfg), "solve", "--T", "10", "--json"]) == 0
    body = json.loads(capsys.readouterr().out)
    assert body["params"]["T"] == 10.0
    assert len(body["roots"]) == 1


def test_config_file_errors(tmp_path, capsys):
    bad = tmp_path / "bad.cfg"
    bad.write_text("J: 1\n")
    assert main(["--config", str(bad), "solve", "--Jp", "1", "--T", "1"]) == 2
    unparsable = tmp_path / "unparsable.cfg"
    unparsable.write_text("J=one\nJp=1\nT=1\n")
    assert main(["--config", str(unparsable), "solve"]) == 2
    assert main(["--config", str(tmp_path / "absent.cfg"), "solve",
                 "--J", "0", "--Jp", "0", "--T", "1"]) == 4


def test_domain_errors_exit_3(capsys):
    assert main(["solve", "--J", "1", "--Jp", "1", "--T", "-4"]) == 3
    assert main(["verify", *EXAMPLE_FLAGS, "--n", "1"]) == 3
    assert main(["oracle", *EXAMPLE_FLAGS, "--n", "6"]) == 3
    assert main(["scan", "--axis", "T=0:1:5", "--J", "0", "--Jp", "0"]) == 3
    assert main(["oracle", *EXAMPLE_FLAGS, "--n", "2", "--field", "warm"]) == 3


def test_io_errors_exit_4(tmp_path, capsys):
    missing = tmp_path / "no-such-dir" / "out.csv"
    assert main(["scan", "--axis", "Jp=0:1:2", "--J", "0", "--T", "1",
                 "--out", str(missing)]) == 4


def test_console_entry_point_subprocess():
    root = Path(__file__).resolve().parents[1]
    result = subprocess.run(
        [sys.executable, "-m", "ivgibbs.cli", "solve", "--J", "0", "--Jp", "0",
         "--T", "1", "--json"],
        capture_output=True, text=True,
        env={**os.environ, "PYTHONPATH": str(root / "src")},
    )
    assert result.returncode == 0
    assert json.loads(result.stdout)["roots"][0]["u"] == pytest.approx(1.0, rel=1e-9)
