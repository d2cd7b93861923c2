import csv
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("RANGENET_CLI")
pytestmark = pytest.mark.skipif(not CLI, reason="RANGENET_CLI not set")


def run(*args, cwd=None):
    return subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, cwd=cwd)


def read(path):
    with open(path, newline="") as f:
        return list(csv.reader(f))


def test_run_writes_timesteps(tmp_path):
    out = tmp_path / "run.csv"
    proc = run("--n", 10, "--g", 5, "--r", 1.5, "--steps", 12, "--out", out, "run")
    assert proc.returncode == 0, proc.stderr
    rows = read(out)
    assert rows[0][:7] == ["model", "N", "g", "r", "p_connect", "round", "timestep"]
    assert len(rows) == 1 + 12


def test_sweep_rows_and_defined_counts(tmp_path):
    out = tmp_path / "sweep.csv"
    proc = run("--n", 12, "--g", 10, "--steps", 10, "--rounds", 3, "--small-world-refs", 0,
               "--vary", "r", "--values", "0:10:1", "--out", out, "sweep")
    assert proc.returncode == 0, proc.stderr
    rows = read(out)
    assert len(rows) == 12
    header = rows[0]
    assert header[:8] == ["model", "N", "g", "r", "p_connect", "param_name", "param_value", "rounds"]
    assert rows[1][header.index("small_world_defined_count")] == "0"
    assert rows[1][header.index("small_world_mean")] == ""


def test_diffusion_dump(tmp_path):
    out = tmp_path / "d.csv"
    proc = run("--n", 10, "--steps", 20, "--rounds", 2, "--process", "complex",
               "--out", out, "diffusion")
    assert proc.returncode == 0, proc.stderr
    rows = read(out)
    assert rows[0] == ["round", "timestep", "frequency", "fixation_time", "crossover_time"]
    assert len(rows) == 1 + 40


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "sim.toml"
    cfg.write_text('n = 9\ng = 3\nsteps = 4\nr = 1.0\n')
    out = tmp_path / "run.csv"
    proc = run("--config", cfg, "--steps", 6, "--out", out, "run")
    assert proc.returncode == 0, proc.stderr
    rows = read(out)
    assert len(rows) == 1 + 6
    assert rows[1][1:3] == ["9", "3"]


def test_exit_codes(tmp_path):
    assert run("--n", 200, "--g", 10, "--out", tmp_path / "x.csv", "run").returncode == 2
    assert run("--model", "grid", "run").returncode == 2
    assert run("--bogus", "run").returncode == 2
    assert run("--process", "sir", "diffusion").returncode == 2
    assert run("--vary", "r", "sweep").returncode == 2  # missing --values
    assert run("--out", "/nonexistent-dir/run.csv", "run").returncode == 3
    assert run("--process", "potion", "--recipes", tmp_path / "none.txt",
               "diffusion").returncode == 3


def test_serial_and_parallel_cli_sweeps_match(tmp_path):
    common = ["--n", 15, "--steps", 20, "--rounds", 6, "--vary", "r", "--values", "1,2,3",
              "--paired", "--small-world-refs", 3]
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert run(*common, "--workers", 1, "--out", a, "sweep").returncode == 0
    assert run(*common, "--workers", 3, "--out", b, "sweep").returncode == 0
    assert Path(a).read_bytes() == Path(b).read_bytes()
