import shutil
import subprocess

import pytest

from syscat_lab import experiments as X
from syscat_lab.cli import main
from syscat_lab.errors import ConfigError
from syscat_lab.mesh import dump_mesh, torus7


def _kv(text):
    block = text.split("\n---\n", 1)[1]
    return dict(line.split(": ", 1) for line in block.strip().splitlines())


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_known_rp3(capsys):
    code, out, _ = run(capsys, "known", "rp3")
    assert code == 0
    assert _kv(out)["cat"] == "[3,3]"


def test_constants_massey(capsys):
    code, out, _ = run(capsys, "constants", "massey", "--n", "19", "--p1", "4", "--p2", "6")
    kv = _kv(out)
    assert code == 0
    assert kv["p3"] == "6"
    assert int(kv["A1"]) + int(kv["A2"]) == int(kv["constant"])


def test_mesh_file(tmp_path, capsys):
    f = tmp_path / "t.mesh"
    f.write_text(dump_mesh(torus7()))
    code, out, _ = run(capsys, "mesh", "systole", "--file", str(f), "--levels", "0", "--edge-metric")
    kv = _kv(out)
    assert code == 0
    assert float(kv["sysh1_z2"]) == pytest.approx(3.0)
    assert kv["surface"] == "orientable genus 1"


def test_mesh_optimize_writes_outputs(tmp_path, capsys):
    code, out, _ = run(
        capsys, "--out", str(tmp_path), "mesh", "optimize", "--builtin", "torus7",
        "--levels", "1", "--iterations", "2", "--step", "0.05", "--seed", "3",
    )
    assert code == 0
    assert (tmp_path / "optimized.mesh").exists()
    assert (tmp_path / "optimize.csv").read_text().startswith("# columns: iter,ratio,area,systole")


def test_lattice_commands(tmp_path, capsys):
    f = tmp_path / "hex.lat"
    f.write_text("lattice v1\nrank 2\n1 0.5\n0.5 1\n")
    code, out, _ = run(capsys, "lattice", "check", "--file", str(f))
    assert code == 0 and _kv(out)["equality"] == "true"
    code, out, _ = run(capsys, "lattice", "check", "--random", "50", "--rank", "2", "--seed", "1")
    assert code == 0 and _kv(out)["violations"] == "0"


def test_algebra_commands(tmp_path, capsys):
    code, out, _ = run(capsys, "algebra", "e0", "--model", "su6")
    assert code == 0 and _kv(out)["e0"] == "3"
    code, out, _ = run(capsys, "algebra", "massey", "--model", "su6", "--u", "x4", "--v", "x4", "--w", "x6")
    assert _kv(out)["nontrivial"] == "true"
    f = tmp_path / "t2.cdga"
    f.write_text("cdga v1\nfield Z2\ncap 5\ngen a : 1\ngen b : 1\n")
    code, out, _ = run(capsys, "algebra", "cohomology", "--file", str(f))
    assert _kv(out)["betti"] == "1 2 1 0 0"
    code, out, _ = run(capsys, "algebra", "cuplength", "--model", "torus 3")
    assert _kv(out)["cup_length"] == "3"


def test_bounds_with_conjectures(tmp_path, capsys):
    f = tmp_path / "mk.txt"
    f.write_text("name: Smale\ndim: 5\npi1: trivial\nbetti_q: 1 0 0 0 0 1\ncuplength: 2\n")
    _, out, _ = run(capsys, "bounds", "--file", str(f))
    assert "syscat_conjectural_lo" not in _kv(out)
    _, out, _ = run(capsys, "bounds", "--file", str(f), "--conjectures")
    assert _kv(out)["syscat_conjectural_lo"] == "2"


def test_csv_format(capsys):
    code, out, _ = run(capsys, "--format", "csv", "known", "s2")
    assert out.splitlines()[0] == "key,value"


@pytest.mark.parametrize(
    "argv",
    [
        ["known", "nowhere"],
        ["mesh", "systole", "--builtin", "icosahedron"],
        ["mesh", "info", "--file", "/nonexistent/file.mesh"],
        ["lattice", "check", "--random", "5"],
    ],
)
def test_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("syscat-lab: error:")


def test_thread_cap(monkeypatch):
    monkeypatch.setenv("SYSCAT_LAB_THREADS", "2")
    assert X.thread_cap(8) == 2
    monkeypatch.setenv("SYSCAT_LAB_THREADS", "zero")
    with pytest.raises(ConfigError):
        X.thread_cap(1)


def test_config_validation():
    with pytest.raises(ConfigError):
        X.ExperimentConfig("nope")
    with pytest.raises(ConfigError):
        X.ExperimentConfig("pu", iterations=0)


def test_experiment_outputs_are_byte_identical(tmp_path, capsys):
    outs = []
    for k in range(2):
        d = tmp_path / str(k)
        code, _, _ = run(capsys, "--out", str(d), "--format", "csv", "experiment", "lattice-sweep", "--samples", "40", "--rank", "3")
        assert code == 0
        outs.append({p.name: p.read_bytes() for p in sorted(d.iterdir())})
    assert outs[0] == outs[1]
    assert set(outs[0]) == {"lattice-sweep.txt", "lattice_sweep.csv"}


def test_parallel_matches_sequential():
    base = X.ExperimentConfig("lattice-sweep", seed=5, samples=30, rank=2)
    a = X.run_experiment(base)
    b = X.run_experiment(X.ExperimentConfig("lattice-sweep", seed=5, samples=30, rank=2, parallel=3))
    assert X.render_csv(a.series[0]) == X.render_csv(b.series[0])


def test_bounds_suite_csv(tmp_path):
    report = X.run_experiment(X.ExperimentConfig("bounds-suite"))
    assert report.passed
    (path,) = X.emit_report(report, "csv", tmp_path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# columns:")
    assert lines[1].split(",")[:6] == ["case", "dim", "cat_lo", "cat_hi", "syscat_lo", "syscat_hi"]
    assert len(lines) == 2 + len(X.stated_cases())


def test_massey_demo_report():
    report = X.run_experiment(X.ExperimentConfig("massey-demo"))
    assert report.passed
    assert all(h.provenance in ("literature", "derived") for h in report.headlines)


@pytest.mark.skipif(shutil.which("syscat-lab") is None, reason="console script not installed")
def test_console_script():
    res = subprocess.run(["syscat-lab", "known", "m19"], capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert "cat: [3,4]" in res.stdout
