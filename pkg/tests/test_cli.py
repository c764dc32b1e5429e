import subprocess
import sys

import pytest

from gammaring.algebra import load_gamma_semiring, validate_gamma_semiring
from gammaring.cli import dispatch, main


@pytest.fixture(scope="module")
def paths(data_dir, fixtures_dir):
    return {
        "B": str(data_dir / "B.gsr"),
        "Z2": str(data_dir / "Z2.gsr"),
        "trivial": str(data_dir / "trivial.gsr"),
        "broken": str(fixtures_dir / "broken_B.gsr"),
        "no_unity": str(fixtures_dir / "no_unity.gsr"),
        "half": str(fixtures_dir / "sigma_half.fz"),
        "bad": str(fixtures_dir / "sigma_bad.fz"),
        "mu_L": str(fixtures_dir / "mu_L.fz"),
    }


def test_validate(paths):
    out = dispatch(["validate", paths["B"]])
    assert (out.exit_code, out.text) == (0, "OK: axioms (1)-(4) hold\n")
    out = dispatch(["validate", paths["broken"]])
    assert out.exit_code == 1
    assert out.text.splitlines()[0] == "FAIL (1) witness=(0,0,0,1)"


def test_missing_file_and_usage(paths, tmp_path):
    assert dispatch(["validate", str(tmp_path / "nope.gsr")]).exit_code == 2
    assert dispatch(["check", paths["B"], paths["half"]]).exit_code == 2  # --kind missing
    out = dispatch(["check", paths["B"], paths["half"], "--kind", "sideways"])
    assert out.exit_code == 2 and "usage:" in out.text
    assert dispatch([]).exit_code == 2


def test_malformed_structure_reports_line(tmp_path):
    p = tmp_path / "bad.gsr"
    p.write_text("gamma-semiring x\nS 2\nGamma 1\naddS\n0 1\n1 9\n")
    out = dispatch(["validate", str(p)])
    assert out.exit_code == 2 and "line 6" in out.text


def test_invalid_structure_rejected_by_other_commands(paths):
    out = dispatch(["check", paths["broken"], paths["half"], "--kind", "left"])
    assert out.exit_code == 2 and "axioms" in out.text


def test_build_operators(paths):
    out = dispatch(["build-operators", paths["B"]])
    assert out.exit_code == 0
    assert "unity [1,0] element=1" in out.text and "unity [0,1]" in out.text
    out = dispatch(["build-operators", paths["no_unity"], "--side", "left"])
    assert out.text.rstrip().endswith("no unity")
    assert dispatch(["build-operators", paths["B"], "--max-elements", "1"]).exit_code == 3


def test_check(paths):
    out = dispatch(["check", paths["B"], paths["half"], "--kind", "two-sided"])
    assert (out.exit_code, out.text) == (0, "OK: fuzzy two_sided ideal of S\n")
    out = dispatch(["check", paths["B"], paths["bad"], "--kind", "left"])
    assert out.exit_code == 1
    assert out.text == "FAIL: not a fuzzy left ideal of S (left-product)\na=0 alpha=0 b=1\n"
    out = dispatch(["check", paths["B"], paths["mu_L"], "--kind", "right", "--on", "L"])
    assert out.exit_code == 0


def test_check_wrong_size(paths, tmp_path):
    p = tmp_path / "three.fz"
    p.write_text("0 1\n1 1\n2 1\n")
    assert dispatch(["check", paths["B"], str(p), "--kind", "left"]).exit_code == 2


def test_transfer_and_roundtrip(paths):
    out = dispatch(["transfer", paths["B"], paths["half"], "--map", "plus-prime"])
    assert (out.exit_code, out.text) == (0, "0 1/1\n1 1/2\n")
    out = dispatch(["transfer", paths["B"], paths["mu_L"], "--map", "plus"])
    assert out.text == "0 1/1\n1 1/2\n"
    out = dispatch(["roundtrip", paths["B"], paths["half"]])
    assert out.exit_code == 0 and out.text.endswith("ROUNDTRIP equal\n")


def test_roundtrip_differs_without_unity(paths, tmp_path):
    p = tmp_path / "s.fz"
    p.write_text("0 1/2\n1 0\n")
    out = dispatch(["roundtrip", paths["no_unity"], str(p)])
    assert out.exit_code == 1
    assert out.text.startswith("0 1/2\n1 1/2\n") and "ROUNDTRIP differs" in out.text


def test_enumerate(paths):
    out = dispatch(["enumerate", paths["B"], "--chain", "2", "--kind", "two_sided"])
    lines = out.text.splitlines()
    assert lines[0] == "COUNT 6" and len(lines) == 7 and "1/1 1/2" in lines
    out = dispatch(["enumerate", paths["trivial"], "--chain", "1", "--kind", "left", "--count-only"])
    assert out.text == "COUNT 2\n"
    assert dispatch(["enumerate", paths["B"], "--chain", "2", "--kind", "left", "--cap", "3"]).exit_code == 3


def test_generate(tmp_path):
    out = dispatch(["generate", "--s", "2", "--gamma", "1", "--seed", "3", "--out", str(tmp_path)])
    assert out.exit_code == 0
    n = int(out.text.split()[1])
    files = sorted(tmp_path.glob("*.gsr"))
    assert n == len(files) > 0
    for f in files:
        assert validate_gamma_semiring(load_gamma_semiring(f)).ok
    again = dispatch(["generate", "--s", "2", "--gamma", "1", "--seed", "3", "--out", str(tmp_path / "b")])
    assert again.text == out.text
    big = dispatch(["generate", "--family", "exhaustive_tables", "--s", "3", "--gamma", "3",
                    "--cap", "100", "--out", str(tmp_path / "c")])
    assert big.exit_code == 3


def test_suite_output_and_report(paths, tmp_path):
    rep = tmp_path / "r.txt"
    out = dispatch(["suite", paths["B"], "--chain", "2", "--samples", "20", "--seed", "7", "--report", str(rep)])
    assert out.exit_code == 0
    assert rep.read_text() == out.text
    lines = out.text.splitlines()
    assert lines[0].startswith("SUITE B S=2 Gamma=1 L=2 R=2")
    assert "BIJECTION-GATE open" in lines
    assert all(" PASS " in line for line in lines if line.startswith("CLAIM"))


def test_suite_gate(paths):
    out = dispatch(["suite", paths["no_unity"], "--samples", "10"])
    assert out.exit_code == 0
    assert "CLAIM bijection:L:right GATED tested=0 gated=1" in out.text
    forced = dispatch(["suite", paths["no_unity"], "--samples", "10", "--force-ungated"])
    assert forced.exit_code == 1
    assert "COUNTEREXAMPLE bijection:L:" in forced.text


def test_main_streams(paths, capsys):
    assert main(["validate", paths["B"]]) == 0
    assert "OK" in capsys.readouterr().out
    assert main(["validate", "/nonexistent.gsr"]) == 2
    assert "error" in capsys.readouterr().err


def test_module_entry_point(paths):
    res = subprocess.run([sys.executable, "-m", "gammaring", "validate", paths["Z2"]],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.startswith("OK")
