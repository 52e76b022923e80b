"""Smoke tests for the python bindings and the CLI JSON contract."""

import json
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

BUILD_DIR = os.environ.get("RESONATOR_BUILD_DIR")
if BUILD_DIR:
    sys.path.insert(0, BUILD_DIR)

rc = pytest.importorskip("_core")

CLI = os.environ.get("RESONATOR_CLI")
SOURCE_DIR = Path(os.environ.get("RESONATOR_SOURCE_DIR", Path(__file__).parents[2]))


def run_cli(*args, env=None):
    assert CLI, "RESONATOR_CLI not set"
    merged = dict(os.environ)
    if env:
        merged.update(env)
    return subprocess.run(
        [CLI, *args], capture_output=True, text=True, env=merged, timeout=240
    )


def load_schema(name):
    with open(SOURCE_DIR / "docs" / "schema" / f"{name}.schema.json") as fh:
        return json.load(fh)


def test_spectra_match_numpy_eigenvalues():
    vals = rc.chain_eigenvalues(6)["values"]
    lap = rc.path_laplacian(6)
    expected = np.sort(np.linalg.eigvalsh(lap))
    assert np.allclose(vals, expected, atol=1e-12)

    ring = rc.ring_eigenvalues(6)
    assert [g["multiplicity"] for g in ring["groups"]] == [1, 2, 2, 1]

    grid = rc.grid_eigenvalues(2, 3)
    assert np.allclose(grid["values"], [0, 1, 2, 3, 3, 5], atol=1e-12)


def test_arrangement_and_model_round_trip():
    arr = rc.Arrangement.chain(4, 1.0, 0.01)
    assert len(arr) == 4
    centers = arr.centers()
    assert centers.shape == (4, 3)
    assert abs(centers[3, 0] - 6.03) < 1e-12

    model = rc.leading_model(arr)
    C = rc.realize(model, 1e-4)
    ev = np.linalg.eigvalsh(C.entries)
    rho = math.pi * abs(math.log(1e-4))
    assert abs(ev[2] / rho - 2.0) < 1e-9


def test_mode_profiles_and_blowup():
    modes = rc.mode_profiles(rc.Arrangement.chain(4, 1.0, 0.01))
    u3 = np.asarray(modes[2]["values"])
    assert np.allclose(u3 / u3[0], [1, -1, -1, 1], atol=1e-10)
    suppressed = [g["edge"] for g in modes[2]["gaps"] if g["rate"] == "suppressed"]
    assert suppressed == [(2, 3)]


def test_frequencies_and_eta_scaling():
    p = rc.PhysicalParams(delta=1e-3, Lambda=1.0, beta=0.5)
    freqs = rc.resonant_frequencies(rc.Arrangement.ring(6, 1.0, 0.01), p)
    eta = rc.eta_factor(p)
    res = [f["re"] for f in freqs if f["re"] is not None]
    assert np.allclose(res, [eta, math.sqrt(3) * eta, 2 * eta], rtol=1e-12)


def test_bem_matches_series_loosely_at_low_resolution():
    arr = rc.Arrangement.chain(2, 1.0, 0.1, allow_small=True)
    result = rc.bem_capacitance(arr, 400)
    series = rc.two_sphere_series(1.0, 2.1)
    assert np.allclose(result["matrix"].entries, series, rtol=0.03)


def test_convergence_report_seeded():
    report = rc.asymptotic_convergence("chain", [8], [1e2, 1e3, 1e4])
    assert report["pass"]
    again = rc.asymptotic_convergence("chain", [8], [1e2, 1e3, 1e4])
    assert report["residuals"] == again["residuals"]


@pytest.mark.skipif(not CLI, reason="CLI path not provided")
class TestCli:
    def test_spectrum_schema(self):
        out = run_cli("spectrum", "--kind", "ring", "--N", "6")
        assert out.returncode == 0
        payload = json.loads(out.stdout)
        jsonschema = pytest.importorskip("jsonschema")
        jsonschema.validate(payload, load_schema("spectrum"))
        assert [g["multiplicity"] for g in payload["groups"]] == [1, 2, 2, 1]

    def test_frequencies_schema(self):
        out = run_cli(
            "frequencies", "--kind", "chain", "--N", "4",
            "--delta", "1e-3", "--Lambda", "1", "--beta", "0.5",
        )
        assert out.returncode == 0
        payload = json.loads(out.stdout)
        jsonschema = pytest.importorskip("jsonschema")
        jsonschema.validate(payload, load_schema("frequencies"))
        res = [f["re"] for f in payload["frequencies"] if f["re"] is not None]
        ratios = [r / res[0] for r in res]
        s2 = math.sqrt(2)
        expected = [
            1.0,
            math.sqrt(2 / (2 - s2)),
            math.sqrt((2 + s2) / (2 - s2)),
        ]
        assert np.allclose(ratios, expected, rtol=1e-12)

    def test_modes_and_capacitance_schemas(self):
        jsonschema = pytest.importorskip("jsonschema")
        out = run_cli("modes", "--kind", "grid", "--m", "2", "--n", "3",
                      "--eps", "0.01")
        assert out.returncode == 0
        jsonschema.validate(json.loads(out.stdout), load_schema("modes"))

        out = run_cli("capacitance", "--kind", "chain", "--N", "3",
                      "--eps", "0.01", "--capacitance", "model")
        assert out.returncode == 0
        jsonschema.validate(json.loads(out.stdout), load_schema("capacitance"))

    def test_tables_and_verify_schemas(self):
        jsonschema = pytest.importorskip("jsonschema")
        out = run_cli("tables")
        assert out.returncode == 0
        body = out.stdout[out.stdout.index("{"):]
        jsonschema.validate(json.loads(body), load_schema("tables"))

        out = run_cli("verify", env={"RESONATOR_SEED": "12648430"})
        assert out.returncode == 0
        body = out.stdout[out.stdout.index("{"):]
        payload = json.loads(body)
        jsonschema.validate(payload, load_schema("verify"))
        assert payload["seed"] == 12648430

    def test_byte_identical_reruns(self):
        args = ("spectrum", "--kind", "grid", "--m", "2", "--n", "8")
        first = run_cli(*args)
        second = run_cli(*args)
        assert first.stdout == second.stdout

    def test_usage_error_exit_code(self):
        out = run_cli("spectrum", "--kind", "pentagon", "--N", "5")
        assert out.returncode == 1

    def test_config_file_with_flag_override(self, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({
            "arrangement": {"kind": "chain", "N": 4, "R": 1.0},
            "gap": {"eps": 0.01},
        }))
        base = run_cli("spectrum", "--config", str(cfg))
        override = run_cli("spectrum", "--config", str(cfg), "--N", "6")
        assert len(json.loads(base.stdout)["groups"]) == 4
        assert len(json.loads(override.stdout)["groups"]) == 6

    def test_csv_outputs(self, tmp_path):
        out = run_cli("spectrum", "--kind", "chain", "--N", "5",
                      "--format", "csv")
        assert out.returncode == 0
        lines = out.stdout.strip().splitlines()
        assert lines[0] == "a,multiplicity,theta"
        assert len(lines) == 6

        target = tmp_path / "modes.csv"
        out = run_cli("modes", "--kind", "chain", "--N", "4", "--eps", "0.01",
                      "--format", "csv", "--out", str(target))
        assert out.returncode == 0
        rows = target.read_text().strip().splitlines()
        assert rows[0] == "resonator,u_1,u_2,u_3,u_4"
        assert len(rows) == 5

    def test_ring_modes_via_model_capacitance(self):
        out = run_cli("modes", "--kind", "ring", "--N", "6", "--eps", "0.01")
        assert out.returncode == 0
        payload = json.loads(out.stdout)
        assert len(payload["modes"]) == 6
        top = np.asarray(payload["modes"][5]["values"])
        assert np.allclose(top / top[0], [1, -1, 1, -1, 1, -1], atol=1e-9)

    def test_frequencies_with_bem_average_capacity(self):
        out = run_cli(
            "frequencies", "--kind", "chain", "--N", "3", "--eps", "0.05",
            "--delta", "1e-3", "--capacitance", "bem", "--panels", "300",
        )
        assert out.returncode == 0
        payload = json.loads(out.stdout)
        omega1 = payload["frequencies"][0]["re"]
        assert omega1 is not None and 0 < omega1 < 1

    def test_scatter_subcommand(self, tmp_path):
        points = tmp_path / "points.csv"
        points.write_text("x,y,z\n10.0,0.0,0.0\n0.0,12.0,3.0\n")
        out = run_cli(
            "scatter", "--kind", "chain", "--N", "3", "--eps", "0.1",
            "--delta", "1e-3", "--panels", "200",
            "--omega", "0.05", "--points", str(points),
        )
        assert out.returncode == 0
        payload = json.loads(out.stdout)
        jsonschema = pytest.importorskip("jsonschema")
        jsonschema.validate(payload, load_schema("scatter"))
        assert len(payload["fields"]) == 2
        assert payload["residual"] <= 1e-10
