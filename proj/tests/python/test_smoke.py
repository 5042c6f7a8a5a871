"""Smoke tests for the python module and the command-line tool."""

import json
import math
import os
import subprocess
import sys

import numpy as np
import pytest

import geodist

GEODIST_BIN = os.environ.get("GEODIST_BIN")


def test_mesh_generators():
    grid = geodist.generate_grid(5, 4)
    assert grid.n_vertices == 20
    assert grid.n_faces == 2 * 4 * 3
    assert grid.vertices().shape == (20, 3)
    assert grid.faces().shape == (24, 3)

    sphere = geodist.generate_icosphere(2)
    assert sphere.n_vertices == 162
    assert sphere.n_faces == 320
    radii = np.linalg.norm(sphere.vertices(), axis=1)
    assert np.allclose(radii, 1.0, atol=1e-12)

    hist = geodist.generate_icosphere(0).degree_histogram()
    assert hist == {5: 12}


def test_mesh_from_arrays_and_validation():
    vertices = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]], dtype=float)
    faces = np.array([[0, 1, 2]], dtype=np.int32)
    mesh = geodist.mesh_from_arrays(vertices, faces)
    assert mesh.n_vertices == 3

    bad = np.array([[0, 1, 7]], dtype=np.int32)
    with pytest.raises(RuntimeError):
        geodist.mesh_from_arrays(vertices, bad)


def test_geodesics_sandwich():
    mesh = geodist.generate_grid(9, 9)
    exact = geodist.grid_reference(mesh, [0])
    ptp = geodist.geodesics(mesh, [0], method="ptp")
    dij = geodist.geodesics(mesh, [0], method="dijkstra")
    fm = geodist.geodesics(mesh, [0], method="fm")

    assert ptp["unreached"] == 0
    assert np.all(ptp["distances"] >= exact * (1 - 1e-12))
    assert np.all(ptp["distances"] <= dij["distances"] + 1e-15)
    assert np.all(fm["distances"] <= dij["distances"] + 1e-15)
    assert ptp["distances"][0] == 0.0


def test_geodesics_accuracy_against_reference():
    mesh = geodist.generate_grid(41, 41)
    center = 20 * 41 + 20
    exact = geodist.grid_reference(mesh, [center])
    result = geodist.geodesics(mesh, [center])
    report = geodist.mape(result["distances"], exact, [center])
    assert report["mape"] < 3.5  # percent; first-order error at unit spacing

    sphere = geodist.generate_icosphere(3)
    great_circle = geodist.sphere_reference(sphere, [0])
    on_sphere = geodist.geodesics(sphere, [0])
    sphere_report = geodist.mape(on_sphere["distances"], great_circle, [0])
    assert sphere_report["mape"] < 3.0


def test_toplesets_partition():
    mesh = geodist.generate_grid(7, 7)
    levels = geodist.toplesets(mesh, [24])
    assert levels["limits"][0] == 0
    assert levels["limits"][-1] == mesh.n_vertices
    assert levels["unreached"] == 0
    assert sorted(levels["sorted"].tolist()) == list(range(mesh.n_vertices))


def test_fps_and_voronoi():
    mesh = geodist.generate_grid(17, 17)
    sampling = geodist.farthest_point_sampling(mesh, 8, seed=0)
    samples = sampling["samples"]
    assert len(samples) == 8
    assert len(set(samples.tolist())) == 8
    radii = [row["radius"] for row in sampling["history"]]
    assert all(radii[i + 1] <= radii[i] + 1e-12 for i in range(len(radii) - 1))
    for rank, vertex in enumerate(samples.tolist()):
        assert sampling["labels"][vertex] == rank

    labels = geodist.voronoi(mesh, samples.tolist())
    assert set(labels.tolist()) == set(range(8))


def test_labels_and_precision():
    mesh = geodist.generate_grid(9, 5)
    result = geodist.geodesics(mesh, [0, 8], labels=True)
    assert result["labels"][0] == 0
    assert result["labels"][8] == 1

    single = geodist.geodesics(mesh, [0], precision="single")
    double = geodist.geodesics(mesh, [0], precision="double")
    assert np.allclose(single["distances"], double["distances"], rtol=1e-5)


def test_worker_determinism():
    mesh = geodist.generate_grid(21, 21, 2.0)
    one = geodist.geodesics(mesh, [0, 440], workers=1)
    many = geodist.geodesics(mesh, [0, 440], workers=8)
    assert np.array_equal(one["distances"], many["distances"])


@pytest.fixture
def cli():
    if not GEODIST_BIN:
        pytest.skip("GEODIST_BIN not set")

    def run(*args):
        return subprocess.run([GEODIST_BIN, *args], capture_output=True, text=True)

    return run


def test_cli_geodesic_csv(cli, tmp_path):
    csv = tmp_path / "d.csv"
    stats = tmp_path / "s.json"
    proc = cli("geodesic", "--grid", "5,5", "--source", "0", "--method", "ptp",
               "--out-csv", str(csv), "--stats", str(stats))
    assert proc.returncode == 0, proc.stderr
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "index,distance,label"
    assert len(lines) == 26
    assert lines[1] == "0,0.0,-1"

    payload = json.loads(stats.read_text())
    assert payload["manifest"]["command"] == "geodesic"
    assert payload["manifest"]["grid"] == "5,5"
    assert payload["n"] == 25
    assert payload["mape_percent"] < 3.0


def test_cli_exit_codes(cli, tmp_path):
    assert cli("geodesic", "--grid", "3,3", "--source", "99").returncode == 2
    assert cli("geodesic", "--grid", "3,3").returncode == 2  # missing --source
    assert cli("geodesic", "--source", "0").returncode == 2  # missing input
    assert cli("fps", "--grid", "3,3", "--count", "0").returncode == 2
    assert cli("bench", "--grid", "3,3", "--sources-range", "5:2").returncode == 2
    bad = tmp_path / "bad.off"
    bad.write_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 9\n")
    assert cli("geodesic", "--mesh", str(bad), "--source", "0").returncode == 2


def test_cli_fps_outputs(cli, tmp_path):
    csv = tmp_path / "samples.csv"
    ply = tmp_path / "labels.ply"
    proc = cli("fps", "--grid", "9,9", "--count", "5", "--out-csv", str(csv),
               "--out-ply", str(ply))
    assert proc.returncode == 0, proc.stderr
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "order,vertex,insertion_radius"
    assert len(lines) == 6
    assert lines[1].split(",")[2] == "inf"  # the seed has no insertion radius
    radii = [float(line.split(",")[2]) for line in lines[2:]]
    assert radii == sorted(radii, reverse=True)
    assert ply.read_text().startswith("ply")


def test_cli_diag_outputs(cli, tmp_path):
    toplesets = tmp_path / "toplesets.csv"
    report = tmp_path / "report.json"
    proc = cli("diag", "--grid", "9,9", "--source", "0",
               "--out-toplesets", str(toplesets), "--stats", str(report))
    assert proc.returncode == 0, proc.stderr
    rows = toplesets.read_text().strip().splitlines()[1:]
    assert sum(int(r.split(",")[1]) for r in rows) == 81

    payload = json.loads(report.read_text())
    assert payload["bounds"]["rho_upper_ok"] is True
    assert payload["manifest"]["command"] == "diag"


def test_cli_diag_convergence(cli, tmp_path):
    curve = tmp_path / "curve.csv"
    proc = cli("diag", "--grid", "11,11", "--source", "60", "--out-convergence", str(curve))
    assert proc.returncode == 0, proc.stderr
    rows = curve.read_text().strip().splitlines()
    assert rows[0] == "k,mape_percent"
    errors = [float(r.split(",")[1]) for r in rows[1:]]
    assert errors == sorted(errors, reverse=True)
    # mesh files have no analytic reference
    mesh = tmp_path / "tri.off"
    mesh.write_text("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n")
    assert cli("diag", "--mesh", str(mesh), "--source", "0",
               "--out-convergence", str(curve)).returncode == 2


def test_cli_bench(cli, tmp_path):
    csv = tmp_path / "bench.csv"
    proc = cli("bench", "--grid", "17,17", "--sources-range", "1:4",
               "--out-csv", str(csv))
    assert proc.returncode == 0, proc.stderr
    lines = csv.read_text().strip().splitlines()
    assert lines[0] == "m,rho,iterations,ptp_relax_calls,fm_relax_calls"
    assert len(lines) == 5


def test_cli_fps_dist_csv(cli, tmp_path):
    dist = tmp_path / "dist.csv"
    proc = cli("fps", "--grid", "7,7", "--count", "3", "--out-dist", str(dist))
    assert proc.returncode == 0, proc.stderr
    lines = dist.read_text().strip().splitlines()
    assert lines[0] == "index,distance,label"
    assert len(lines) == 50
    labels = {int(line.split(",")[2]) for line in lines[1:]}
    assert labels == {0, 1, 2}


def test_cli_workers_env_fallback(cli, tmp_path):
    out = tmp_path / "s.json"
    env = dict(os.environ, GEODIST_WORKERS="2")
    proc = subprocess.run(
        [GEODIST_BIN, "geodesic", "--grid", "5,5", "--source", "0", "--stats", str(out)],
        capture_output=True, text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    payload = json.loads(out.read_text())
    assert payload["workers"] == 2
    assert payload["epsilon"] == 0.001


def test_cli_workers_determinism(cli, tmp_path):
    outputs = []
    for workers in ("1", "2", "8"):
        path = tmp_path / f"d{workers}.csv"
        proc = cli("geodesic", "--grid", "9,9,2", "--source", "0",
                   "--workers", workers, "--out-csv", str(path))
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_text())
    assert outputs[0] == outputs[1] == outputs[2]
