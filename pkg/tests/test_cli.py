import json
import subprocess
import sys

from ncpark.cli import EXIT_CAP, EXIT_CONFIG, EXIT_OK, main


def run_cli(args, tmp_path, name="out.jsonl"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    return code, lines


def test_enumerate_a2(tmp_path):
    code, lines = run_cli(["enumerate", "--family", "A", "--rank", "2", "--k", "1"], tmp_path)
    assert code == EXIT_OK
    classes = [r for r in lines if "class" in r]
    assert len(classes) == 16
    summary = lines[-1]
    assert summary["summary"] and summary["pass"]
    assert all(r["schema"] == 1 for r in lines)


def test_verify_weak(tmp_path):
    code, lines = run_cli(["verify-weak", "--family", "A", "--rank", "3", "--k", "2"], tmp_path)
    assert code == EXIT_OK
    rows = [r for r in lines if "summary" not in r]
    assert all(r["pass"] for r in rows)
    assert all(r["expected"] == r["fixed"] for r in rows)


def test_verify_csp_i2(tmp_path):
    code, lines = run_cli(["verify-csp", "--family", "I2", "--m", "5", "--k", "2"], tmp_path)
    assert code == EXIT_OK
    rows = [r for r in lines if "summary" not in r]
    assert len(rows) == 10
    assert all(r["expected"] == r["actual"] for r in rows)


def test_verify_intermediate(tmp_path):
    code, lines = run_cli(
        ["verify-intermediate", "--family", "D", "--rank", "3", "--k", "1"], tmp_path
    )
    assert code == EXIT_OK
    assert lines[-1]["failures"] == 0


def test_verify_bijections(tmp_path):
    code, _ = run_cli(
        ["verify-bijection", "--family", "B", "--rank", "2", "--k", "2", "--kind", "bc"], tmp_path
    )
    assert code == EXIT_OK
    code, _ = run_cli(
        ["verify-bijection", "--family", "I2", "--m", "4", "--k", "2", "--kind", "dihedral"],
        tmp_path,
    )
    assert code == EXIT_OK


def test_nonnesting_and_torus(tmp_path):
    code, lines = run_cli(["nonnesting-count", "--family", "B", "--rank", "2", "--k", "2"], tmp_path)
    assert code == EXIT_OK
    assert lines[0]["expected"] == lines[0]["actual"] == 15
    code, lines = run_cli(["torus-character", "--family", "A", "--rank", "2", "--k", "3"], tmp_path)
    assert code == EXIT_OK


def test_classical_park(tmp_path):
    code, lines = run_cli(["classical-park", "--family", "A", "--rank", "2", "--k", "2"], tmp_path)
    assert code == EXIT_OK
    counts = {r["check"]: r for r in lines if "check" in r}
    assert counts["count"]["actual"] == 49


def test_d_filter(tmp_path):
    code, lines = run_cli(
        ["verify-weak", "--family", "A", "--rank", "2", "--k", "1", "--d", "0:2"], tmp_path
    )
    assert code == EXIT_OK
    assert {r["d"] for r in lines if "d" in r} == {0, 1}


def test_threads_flag(tmp_path):
    code, lines = run_cli(
        ["classical-park", "--family", "A", "--rank", "2", "--k", "1", "--threads", "4"], tmp_path
    )
    assert code == EXIT_OK


def test_deterministic_output(tmp_path):
    _, first = run_cli(["enumerate", "--family", "B", "--rank", "2", "--k", "2"], tmp_path, "a.jsonl")
    _, second = run_cli(["enumerate", "--family", "B", "--rank", "2", "--k", "2"], tmp_path, "b.jsonl")
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_exit_codes():
    assert main(["verify-weak", "--family", "B"]) == EXIT_CONFIG
    assert main(["verify-weak", "--family", "B", "--rank", "9", "--k", "1"]) == EXIT_CAP
    assert main(["classical-park", "--family", "B", "--rank", "2"]) == EXIT_CONFIG


def test_cap_env_var(tmp_path, monkeypatch):
    monkeypatch.setenv("NCPARK_CAP", "10")
    out = tmp_path / "cap.jsonl"
    code = main(["enumerate", "--family", "A", "--rank", "2", "--k", "1", "--out", str(out)])
    assert code == EXIT_CAP
    code = main(
        ["enumerate", "--family", "A", "--rank", "2", "--k", "1", "--cap", "100000", "--out", str(out)]
    )
    assert code == EXIT_OK


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ncpark.cli", "verify-csp", "--family", "A", "--rank", "2", "--k", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert all(json.loads(line)["schema"] == 1 for line in proc.stdout.splitlines())
