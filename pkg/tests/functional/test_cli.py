"""Run the installed wp-dephasing command end to end."""

import json
import subprocess
from pathlib import Path

import pytest

TIMEOUT = 120

pytestmark = pytest.mark.timeout(10 * TIMEOUT)

CONFIG = """
seed = 42
noise_amplitude = 1e-5

[dot]
gamma = 0.5

[bias]
v_d_values = [100.0, 10.0]
"""


def run_cli(*args, cwd=None):
    return subprocess.run(["wp-dephasing", *args], capture_output=True, text=True, cwd=cwd, timeout=TIMEOUT)


@pytest.fixture
def config_file(tmp_path: Path) -> Path:
    path = tmp_path / "run.toml"
    path.write_text(CONFIG)
    return path


@pytest.mark.parametrize("command", ["sweep-field", "sweep-plunger", "sweep-gate", "sweep-bias"])
@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_output_independent_of_workers(command, fmt, config_file: Path, tmp_path: Path):
    outputs = []
    for workers in ("1", "8"):
        target = tmp_path / "w{}".format(workers) / "result.{}".format(fmt)
        process = run_cli(command, "-c", str(config_file), "-f", fmt, "-o", str(target), "-w", workers)
        assert process.returncode == 0, process.stderr
        outputs.append(target.read_bytes())
    assert outputs[0] == outputs[1]


def test_csv_to_stdout(config_file: Path):
    process = run_cli("sweep-bias", "-c", str(config_file))
    assert process.returncode == 0, process.stderr
    lines = process.stdout.splitlines()
    assert lines[0].startswith("# meta: ")
    assert lines[1] == "V_d_uV,N,nu_d,nu_d_exact,nu"
    assert len(lines) == 12


def test_json_result_reruns(config_file: Path, tmp_path: Path):
    first = tmp_path / "first.json"
    second = tmp_path / "second.json"
    assert run_cli("sweep-gate", "-c", str(config_file), "-f", "json", "-o", str(first)).returncode == 0
    assert run_cli("sweep-gate", "-c", str(first), "-f", "json", "-o", str(second)).returncode == 0
    assert first.read_bytes() == second.read_bytes()
    document = json.loads(first.read_text())
    assert document["axis"]["name"] == "qpc_gate"
    assert document["meta"]["config"]["bias"]["v_d_values"] == [100.0, 10.0]


@pytest.mark.parametrize(
    "args, field",
    [
        (["sweep-bias", "-s", "dot.gamma=-1"], "dot.gamma"),
        (["sweep-bias", "-s", "dot.spin=1"], "dot.spin"),
        (["sweep-field", "-s", "sweep.axis=bias"], "sweep.axis"),
    ],
)
def test_config_errors_exit_2(args, field):
    process = run_cli(*args)
    assert process.returncode == 2
    assert field in process.stderr


def test_malformed_config_exit_2(tmp_path: Path):
    path = tmp_path / "bad.toml"
    path.write_text("[dot]\ngamma = = 1\n")
    process = run_cli("sweep-field", "-c", str(path))
    assert process.returncode == 2
    assert "bad.toml:2" in process.stderr


def test_insufficient_peaks_exit_3():
    process = run_cli("sweep-plunger", "-s", "sweep.lo=0.045", "-s", "sweep.hi=0.075")
    assert process.returncode == 3
    assert "InsufficientDataError" in process.stderr


def test_oracle_check():
    process = run_cli("oracle-check", "--draws", "50", "--max-probes", "8", "-w", "4")
    assert process.returncode == 0, process.stderr
    assert "status: pass" in process.stdout


def test_oracle_check_failure_exit_3():
    process = run_cli("oracle-check", "--draws", "5", "--max-probes", "4", "--tolerance", "-1")
    assert process.returncode == 3
    assert "status: FAIL" in process.stdout
    assert "OracleCheckError" in process.stderr


def test_vanishing_visibility_exit_3():
    process = run_cli("sweep-bias", "-s", "interferometer.bare_visibility=0.0", "-f", "json")
    assert process.returncode == 3
    assert "DomainError" in process.stderr
    assert "Traceback" not in process.stderr
