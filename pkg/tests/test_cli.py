import json
import subprocess
import sys

import numpy as np
import pytest

from tdats.cli import main
from tdats.features import sw1pers_series_score
from tdats.io import diagram_text, read_diagram, read_table, table_text
from tdats.rips import distance_matrix, rips_persistence
from tdats.sublevel import sublevel_persistence_1d
from tdats.synthetic import cosine

WORKED = [1, 0.5, 1, 1.5, 0.5, 0, 1, 1, 0.5, 1]


def write_column(path, values, header="x"):
    path.write_text(header + "\n" + "\n".join(repr(float(v)) for v in values) + "\n")
    return str(path)


def run(*argv):
    return main([str(a) for a in argv])


def last_error(capsys):
    return json.loads(capsys.readouterr().err.strip().splitlines()[-1])


def test_sublevel_worked_example(tmp_path):
    src = write_column(tmp_path / "f.csv", WORKED)
    out = tmp_path / "dg.csv"
    assert run("sublevel", src, "-o", out) == 0
    dg = read_diagram(str(out))
    assert dg.as_array().tolist() == [[0, 0.0, 1.5], [0, 0.5, 1.5], [0, 0.5, 1.0]]
    assert out.read_text() == diagram_text(sublevel_persistence_1d(WORKED))
    manifest = json.loads((tmp_path / "dg.csv.manifest.json").read_text())
    assert manifest["params"]["command"] == "sublevel"
    assert manifest["input_sha256"]["input"]


def test_sw1pers_cosine(tmp_path):
    src = tmp_path / "cos.csv"
    assert run("generate", "cosine", "--T", 480, "--period", 12, "-o", src) == 0
    out = tmp_path / "score.csv"
    assert run("sw1pers", src, "-o", out) == 0
    _, table = read_table(str(out))
    score = table[0, 1]
    assert score < 0.2
    x = read_table(str(src))[1][:, 0]
    assert score == sw1pers_series_score(x)


def test_missing_input(tmp_path, capsys):
    assert run("rips", tmp_path / "nope.csv") == 3
    assert last_error(capsys)["error"] == "file_not_found"


def test_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("x\n1\nabc\n")
    assert run("sublevel", bad) == 3
    assert last_error(capsys)["error"] == "parse_error"


def test_parameter_error(tmp_path, capsys):
    src = write_column(tmp_path / "f.csv", WORKED)
    assert run("embed", src, "--d", 20, "--tau", 1) == 2
    assert last_error(capsys)["error"] == "parameter_error"
    assert run("rips", src, "--maxdim", 3) == 2
    assert run("nonsense") == 2


def test_degenerate_error(tmp_path, capsys):
    src = write_column(tmp_path / "c.csv", [2.0] * 40)
    assert run("spectrum", src) == 4
    assert last_error(capsys)["error"] == "degenerate_input"


def test_rips_output_matches_library(tmp_path):
    pts = np.random.default_rng(0).normal(size=(15, 2))
    src = tmp_path / "pts.csv"
    src.write_text(table_text(["x", "y"], pts))
    out = tmp_path / "dg.csv"
    assert run("rips", src, "-o", out) == 0
    assert out.read_text() == diagram_text(rips_persistence(distance_matrix(pts)))


def test_distance_and_landscape(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    a.write_text("dim,birth,death\n0,0,2\n")
    b.write_text("dim,birth,death\n0,0,1\n")
    out = tmp_path / "d.csv"
    assert run("distance", a, b, "--kind", "wasserstein", "-o", out) == 0
    assert read_table(str(out))[1][0, 0] == 1.0
    assert run("landscape", a, "--dim", 0, "--grid-points", 501, "--norm", "1", "-o", out) == 0
    assert read_table(str(out))[1][0, 0] == pytest.approx(1.0)


def test_json_flag(tmp_path):
    src = write_column(tmp_path / "f.csv", WORKED)
    out = tmp_path / "dg.json"
    assert run("sublevel", src, "--json", "-o", out) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["dim", "birth", "death"]
    assert doc["rows"][0] == [0, 0.0, 1.5]


def test_replay_is_bit_exact(tmp_path):
    src = tmp_path / "x.csv"
    run("generate", "case", "--case", 2, "--seed", 5, "-o", src)
    out = tmp_path / "feat.csv"
    assert run("features", "breaks", src, "--threads", 3, "-o", out) == 0
    again = tmp_path / "again.csv"
    assert run("replay", f"{out}.manifest.json", "-o", again) == 0
    assert again.read_bytes() == out.read_bytes()


def test_threads_do_not_change_output(tmp_path):
    rng = np.random.default_rng(1)
    src = tmp_path / "batch.csv"
    src.write_text(table_text([f"s{i}" for i in range(4)], rng.integers(0, 3, (100, 4))))
    outs = []
    for threads in (1, 4):
        out = tmp_path / f"w{threads}.csv"
        assert run("wft", src, "--landscape", 20, "--threads", threads, "-o", out) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_embed_resolves_parameters(tmp_path):
    src = tmp_path / "cos.csv"
    run("generate", "cosine", "-o", src)
    out = tmp_path / "pc.csv"
    assert run("embed", src, "-o", out) == 0
    params = json.loads((tmp_path / "pc.csv.manifest.json").read_text())["params"]
    assert (params["tau"], params["d"]) == (3, 2)
    assert read_table(str(out))[1].shape == (477, 2)


def test_cluster_and_features(tmp_path):
    rng = np.random.default_rng(2)
    X = np.vstack([rng.normal(0, 0.1, (10, 2)), rng.normal(5, 0.1, (10, 2))])
    src = tmp_path / "X.csv"
    src.write_text(table_text(["a", "b"], X))
    out = tmp_path / "labels.csv"
    assert run("cluster", src, "--k", 2, "--seed", 4, "-o", out) == 0
    labels = read_table(str(out))[1][:, 0]
    assert len(set(labels[:10])) == 1 and labels[0] != labels[10]
    dg = tmp_path / "dg.csv"
    dg.write_text("# maxscale=3.0\ndim,birth,death\n0,0,2\n0,0,1\n1,0.5,1\n")
    for kind in ("lifetime", "betti"):
        assert run("features", kind, dg, "-o", tmp_path / f"{kind}.csv") == 0
    _, betti = read_table(str(tmp_path / "betti.csv"))
    assert betti.shape == (300, 3) and betti[-1, 0] == 3.0


def test_dtm_grid_diagram(tmp_path):
    theta = 2 * np.pi * np.arange(60) / 60
    src = tmp_path / "circle.csv"
    src.write_text(table_text(["x", "y"], np.column_stack([np.cos(theta), np.sin(theta)])))
    out = tmp_path / "dtm.csv"
    assert run("dtm", src, "--step", 0.065, "--diagram", "-o", out) == 0
    assert len(read_diagram(str(out))) >= 2


def test_console_script_entry_point(tmp_path):
    src = write_column(tmp_path / "f.csv", WORKED)
    res = subprocess.run([sys.executable, "-m", "tdats.cli", "sublevel", src],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == diagram_text(sublevel_persistence_1d(WORKED))
