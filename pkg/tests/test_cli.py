"""End-to-end command line checks, driven through cli.main with exit-code
assertions, plus one real subprocess smoke test."""

import json
import shutil
import subprocess
import sys

import numpy as np
import pytest

import helpers
from qtm import MachineConfig, run
from qtm import io as qio
from qtm.cli import main

ALPHA = helpers.ALPHA
ALPHA_SRC = "pi/sqrt(3)"


def test_simulate_csv_with_sidecar(tmp_path):
    out = tmp_path / "run.csv"
    argv = ["simulate", "--tape-size", "2", "--alpha", ALPHA_SRC,
            "--steps", "40", "--out", str(out)]
    assert main(argv) == 0
    m, n, p, bloch = qio.read_trajectory_csv(str(out))
    expected = run(MachineConfig.uniform(2, ALPHA, steps=40)).bloch
    np.testing.assert_array_equal(bloch, expected)

    manifest = json.loads((tmp_path / "run.csv.manifest.json").read_text())
    assert manifest["command"] == "qtm " + " ".join(argv)
    assert manifest["config"]["tape_size"] == 2
    assert manifest["outputs"] == [str(out)]
    assert "tool_version" in manifest


def test_simulate_zero_steps(tmp_path):
    out = tmp_path / "run.csv"
    assert main(["simulate", "--tape-size", "1", "--alpha", "1.0",
                 "--steps", "0", "--out", str(out)]) == 0
    assert len(out.read_text().splitlines()) == 2


def test_simulate_stdout_default(capsys):
    assert main(["simulate", "--tape-size", "1", "--alpha", "1.0",
                 "--steps", "3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith(qio.CSV_HEADER)
    assert len(out.splitlines()) == 5


@pytest.mark.parametrize("alt", ["recursion", "primitives"])
def test_alternate_engines_agree_with_statevector(alt, tmp_path):
    common = ["--tape-size", "3", "--alpha", ALPHA_SRC, "--steps", "120"]
    ref, other = tmp_path / "sv.csv", tmp_path / "alt.csv"
    assert main(["simulate", *common, "--out", str(ref)]) == 0
    assert main(["simulate", *common, "--engine", alt, "--out", str(other)]) == 0
    *_, ref_bloch = qio.read_trajectory_csv(str(ref))
    *_, alt_bloch = qio.read_trajectory_csv(str(other))
    np.testing.assert_allclose(alt_bloch, ref_bloch, atol=1e-9)


def test_primitives_engine_handles_sign_tapes(tmp_path):
    ref, other = tmp_path / "sv.csv", tmp_path / "p.csv"
    common = ["--tape-size", "2", "--alpha", "1.0", "--phi0", "0.4",
              "--steps", "60", "--initial", "0+"]
    assert main(["simulate", *common, "--out", str(ref)]) == 0
    assert main(["simulate", *common, "--engine", "primitives",
                 "--out", str(other)]) == 0
    *_, ref_bloch = qio.read_trajectory_csv(str(ref))
    *_, alt_bloch = qio.read_trajectory_csv(str(other))
    np.testing.assert_allclose(alt_bloch, ref_bloch, atol=1e-10)


def test_simulate_json_embeds_manifest(tmp_path):
    out = tmp_path / "run.json"
    assert main(["simulate", "--tape-size", "1", "--alpha", "1.0",
                 "--steps", "8", "--format", "json", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["manifest"]["config"]["steps"] == 8
    assert len(doc["points"]) == 9
    assert not (tmp_path / "run.json.manifest.json").exists()


def test_simulate_svg_deterministic(tmp_path):
    argv = ["simulate", "--tape-size", "1", "--alpha", ALPHA_SRC,
            "--steps", "30", "--format", "svg"]
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert (tmp_path / "a.svg.manifest.json").exists()


def test_primitives_subcommand(tmp_path):
    out = tmp_path / "p.csv"
    assert main(["primitives", "--pattern=-+", "--alpha", ALPHA_SRC,
                 "--steps", "20", "--out", str(out)]) == 0
    *_, bloch = qio.read_trajectory_csv(str(out))
    assert bloch.shape == (21, 3)
    assert np.all(bloch[:, 0] == 0.0)


def test_classify_all_three_spins(tmp_path):
    out = tmp_path / "c.csv"
    assert main(["classify", "--all", "--tape-size", "3",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "pattern,kind,q,gaps,period"
    assert len(lines) == 9
    rows = [line.split(",") for line in lines[1:]]
    periodic = {r[0] for r in rows if r[1] == "periodic"}
    assert periodic == {"-++", "+-+", "++-", "---"}
    for r in rows:
        # numeric detection and the analytic label must agree
        assert (r[1] == "periodic") == (r[4] != "")
        if r[4]:
            assert int(r[4]) <= 12


def test_classify_single_pattern(capsys):
    assert main(["classify", "--pattern=--+"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "--+,aperiodic,2,0;0;1,"


def test_classify_pattern_size_conflict():
    assert main(["classify", "--pattern", "+-", "--tape-size", "3"]) == 2


def test_classify_all_needs_tape_size():
    assert main(["classify", "--all"]) == 2


def test_decompose_zeros(tmp_path):
    out = tmp_path / "d.csv"
    assert main(["decompose", "--initial", "zeros", "--tape-size", "4",
                 "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "pattern,weight"
    assert len(lines) == 17
    for line in lines[1:]:
        assert float(line.split(",")[1]) == 0.0625


def test_spectrum_pattern(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["spectrum", "--pattern", "-", "--alpha", ALPHA_SRC,
                 "--steps", "127", "--out", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "frequency,magnitude_y,magnitude_z"
    assert len(lines) == 129


def test_spectrum_needs_a_source():
    assert main(["spectrum", "--alpha", "1.0", "--steps", "10"]) == 2


def test_invariants_single_spin(tmp_path):
    out = tmp_path / "i.json"
    assert main(["invariants", "--tape-size", "1", "--alpha", ALPHA_SRC,
                 "--steps", "2000", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["num_circles"] == 3
    assert doc["radius"] == pytest.approx(0.5, abs=1e-9)
    assert doc["residual"] <= 1e-6
    assert len(doc["centers"]) == 3


def test_invariants_three_spins_fails_numerically(tmp_path, capsys):
    code = main(["invariants", "--tape-size", "3", "--alpha", ALPHA_SRC,
                 "--steps", "1500", "--out", str(tmp_path / "i.json")])
    assert code == 3
    assert "numeric validation" in capsys.readouterr().err


def test_recursion_engine_rejects_sign_tape():
    assert main(["simulate", "--tape-size", "2", "--alpha", "1.0",
                 "--steps", "5", "--initial", "+-",
                 "--engine", "recursion"]) == 2


def test_primitives_engine_rejects_signed_flip():
    assert main(["simulate", "--tape-size", "2", "--alpha", "1.0",
                 "--steps", "5", "--variant", "iy",
                 "--engine", "primitives"]) == 2


def test_bad_angle_expression_is_a_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["simulate", "--tape-size", "1", "--alpha", "pi+1",
              "--steps", "5"])
    assert info.value.code == 2


def test_unknown_subcommand():
    with pytest.raises(SystemExit):
        main(["transmogrify"])


def test_thread_env_round_trip(tmp_path, monkeypatch):
    plain = tmp_path / "a.csv"
    pooled = tmp_path / "b.csv"
    args = ["classify", "--all", "--tape-size", "4", "--max-cycles", "20"]
    assert main(args + ["--out", str(plain)]) == 0
    monkeypatch.setenv("QTM_THREADS", "3")
    assert main(args + ["--out", str(pooled)]) == 0
    assert plain.read_text() == pooled.read_text()


def test_thread_env_validated(monkeypatch):
    monkeypatch.setenv("QTM_THREADS", "many")
    assert main(["classify", "--all", "--tape-size", "2"]) == 2


def test_module_entry_point_subprocess(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "qtm.cli", "--version"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    out = tmp_path / "run.csv"
    proc = subprocess.run(
        [sys.executable, "-m", "qtm.cli", "simulate", "--tape-size", "1",
         "--alpha", "1.0", "--steps", "4", "--out", str(out)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    assert out.exists()


@pytest.mark.skipif(shutil.which("qtm") is None,
                    reason="console script not on PATH")
def test_console_script_installed():
    proc = subprocess.run(["qtm", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip()
