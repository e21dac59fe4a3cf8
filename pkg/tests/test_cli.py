import json
import subprocess
import sys
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from jroc import context_to_json, points_from_csv, uniform_context
from jroc.cli import main

from helpers import dataset_to_csv, make_numeric_dataset


@pytest.fixture(scope="module")
def data_csv(tmp_path_factory):
    root = tmp_path_factory.mktemp("cli")
    rng = np.random.default_rng(31)
    d = make_numeric_dataset(rng, n=90, m=4, c=2, signal=1.5)
    return dataset_to_csv(d, root / "blob.csv")


def test_lattice_hull_select_chain(data_csv, tmp_path, capsys):
    pts = str(tmp_path / "points.csv")
    assert main(["lattice", "--data", data_csv, "--model",
                 '{"kind": "knn", "k": 3}', "--out", pts]) == 0
    assert "wrote 16 points" in capsys.readouterr().out
    points = points_from_csv(open(pts).read())
    assert len(points) == 16

    hull_path = str(tmp_path / "hull.json")
    assert main(["hull", "--points", pts, "--out", hull_path]) == 0
    capsys.readouterr()
    hull = json.loads(open(hull_path).read())
    assert hull["vertices"] and hull["regions"]
    lo = [r["alpha_lo"] for r in hull["regions"]]
    assert lo[0] == 0.0 and hull["regions"][-1]["alpha_hi"] == 1.0

    assert main(["select", "--points", pts, "--alpha", "0.5"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["alpha"] == 0.5
    assert set(payload) == {
        "alpha", "model_id", "cfg", "mean_tc", "mean_mc", "joint_cost"}
    assert len(payload["cfg"]) == 4 and set(payload["cfg"]) <= {"0", "1"}

    assert main(["select", "--points", pts, "--alpha", "1.5"]) == 1


def test_hull_prints_to_stdout_without_out(data_csv, tmp_path, capsys):
    pts = str(tmp_path / "points.csv")
    assert main(["lattice", "--data", data_csv, "--model", "naive_bayes",
                 "--out", pts]) == 0
    capsys.readouterr()
    assert main(["hull", "--points", pts]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"vertices", "breakpoints", "regions"}


def test_search_methods_and_flag_gating(data_csv, tmp_path, capsys):
    for method in ("bmc", "btc", "bjc"):
        out = str(tmp_path / f"{method}.json")
        assert main(["search", "--data", data_csv, "--model", "majority",
                     "--method", method, "--out", out]) == 0
        trace = json.loads(open(out).read())
        assert trace["method"] == method.upper()
        assert trace["budget"] == 11 == len(trace["visited"])
        assert len(trace["greedy_path"]) == 5
        assert trace["greedy_path"][0] == "1111"
    assert "visited 11 configurations" in capsys.readouterr().out

    out = str(tmp_path / "bjc_a.json")
    assert main(["search", "--data", data_csv, "--model", "majority",
                 "--method", "bjc", "--alpha", "0.3", "--out", out]) == 0
    assert main(["search", "--data", data_csv, "--model", "majority",
                 "--method", "bmc", "--alpha", "0.3", "--out", out]) == 1
    assert main(["search", "--data", data_csv, "--model", "majority",
                 "--method", "bjc", "--budget", "5", "--out", out]) == 1
    assert "only applies to" in capsys.readouterr().err


def test_search_rnd_budget_and_seed(data_csv, tmp_path):
    out1 = str(tmp_path / "r1.json")
    out2 = str(tmp_path / "r2.json")
    assert main(["search", "--data", data_csv, "--model", "majority",
                 "--method", "rnd", "--budget", "6", "--seed", "1",
                 "--out", out1]) == 0
    trace = json.loads(open(out1).read())
    assert trace["budget"] == 6 and trace["greedy_path"] == []
    assert "0000" in {v["cfg"] for v in trace["visited"]}

    main(["search", "--data", data_csv, "--model", "majority",
          "--method", "rnd", "--budget", "6", "--seed", "1", "--out", out2])
    assert open(out1).read() == open(out2).read()
    main(["search", "--data", data_csv, "--model", "majority",
          "--method", "rnd", "--budget", "6", "--seed", "2", "--out", out2])
    assert open(out1).read() != open(out2).read()


def test_search_points_out_round_trips(data_csv, tmp_path):
    out = str(tmp_path / "t.json")
    pts = str(tmp_path / "t_points.csv")
    assert main(["search", "--data", data_csv, "--model",
                 '{"kind": "knn", "k": 3}', "--method", "bmc",
                 "--out", out, "--points-out", pts]) == 0
    points = points_from_csv(open(pts).read())
    assert len(points) == 11
    assert {p.model_id for p in points} == {"knn3"}


def test_plot_command(data_csv, tmp_path):
    pts = str(tmp_path / "points.csv")
    main(["lattice", "--data", data_csv, "--model",
          '{"kind": "knn", "k": 3}', "--out", pts])
    svg = str(tmp_path / "plot.svg")
    assert main(["plot", "--points", pts, "--alpha", "0.3", "--alpha", "0.7",
                 "--out", svg]) == 0
    root = ET.fromstring(open(svg).read())
    ns = "{http://www.w3.org/2000/svg}"
    texts = [t.text for t in root.iter(f"{ns}text")]
    assert "a=0.3" in texts and "a=0.7" in texts
    assert len(list(root.iter(f"{ns}polyline"))) >= 1

    bare = str(tmp_path / "bare.svg")
    assert main(["plot", "--points", pts, "--no-hulls", "--out", bare]) == 0
    root = ET.fromstring(open(bare).read())
    assert len(list(root.iter(f"{ns}polyline"))) == 0


def test_context_file_and_no_normalize(data_csv, tmp_path):
    ctx = uniform_context(4, 2)
    scaled = ctx.__class__(T=ctx.T * 8.0, M=ctx.M, alpha=ctx.alpha)
    ctx_path = tmp_path / "ctx.json"
    ctx_path.write_text(context_to_json(scaled, normalized=False))

    norm_pts = str(tmp_path / "norm.csv")
    raw_pts = str(tmp_path / "raw.csv")
    base = ["lattice", "--data", data_csv, "--model", "majority"]
    assert main(base + ["--context", str(ctx_path), "--out", norm_pts]) == 0
    assert main(base + ["--context", str(ctx_path), "--no-normalize",
                        "--out", raw_pts]) == 0
    norm_tc = max(p.mean_tc for p in points_from_csv(open(norm_pts).read()))
    raw_tc = max(p.mean_tc for p in points_from_csv(open(raw_pts).read()))
    assert abs(norm_tc - 1.0) < 1e-9
    assert abs(raw_tc - 8.0) < 1e-9

    bad = tmp_path / "bad_ctx.json"
    bad.write_text(context_to_json(uniform_context(3, 2)))
    assert main(base + ["--context", str(bad), "--out", norm_pts]) == 1


def test_train_frac_validation(data_csv, tmp_path, capsys):
    pts = str(tmp_path / "p.csv")
    assert main(["lattice", "--data", data_csv, "--model", "majority",
                 "--train-frac", "1.0", "--out", pts]) == 0
    for frac in ("0.0", "1.5", "-0.2"):
        assert main(["lattice", "--data", data_csv, "--model", "majority",
                     "--train-frac", frac, "--out", pts]) == 1
    capsys.readouterr()


def test_exit_codes(data_csv, tmp_path, capsys):
    pts = str(tmp_path / "p.csv")
    assert main(["lattice", "--data", "/nope/missing.csv", "--model",
                 "majority", "--out", pts]) == 2
    ragged = tmp_path / "ragged.csv"
    ragged.write_text("a,b,label\n1,2,c0\n3,c1\n")
    assert main(["lattice", "--data", str(ragged), "--model", "majority",
                 "--out", pts]) == 1
    assert main(["lattice", "--data", data_csv, "--model", "zap",
                 "--out", pts]) == 1
    assert main(["lattice", "--data", data_csv, "--model", "{broken",
                 "--out", pts]) == 1
    assert main(["lattice", "--data", data_csv, "--model", "majority",
                 "--label-column", "zap", "--out", pts]) == 1
    assert main(["zap"]) == 1
    assert main(["search", "--data", data_csv, "--model", "majority",
                 "--out", pts]) == 1  # --method is required
    assert main(["lattice", "--data", data_csv, "--model", "majority",
                 "--ceiling", "2", "--out", pts]) == 1
    err = capsys.readouterr().err
    assert err.count("error:") == 8


def test_label_column_by_name(data_csv, tmp_path):
    pts = str(tmp_path / "p.csv")
    assert main(["lattice", "--data", data_csv, "--model", "majority",
                 "--label-column", "label", "--out", pts]) == 0


def test_experiment_and_stats_commands(data_csv, tmp_path, capsys):
    config = {
        "datasets": [data_csv],
        "models": [{"kind": "majority"}, {"kind": "knn", "k": 3}],
        "alpha_grid": [0.3, 0.7],
        "repetitions": 2,
        "methods": ["full", "bmc", "rnd"],
        "seed": 3,
    }
    cfg_path = tmp_path / "config.json"
    cfg_path.write_text(json.dumps(config))
    out_dir = tmp_path / "report"
    assert main(["experiment", "--config", str(cfg_path),
                 "--out", str(out_dir)]) == 0
    out = capsys.readouterr().out
    assert "ran 12 cells" in out
    assert (out_dir / "result_matrix.csv").exists()

    assert main(["stats", "--matrix", str(out_dir / "result_matrix.csv"),
                 "--significance", "0.10"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["significance"] == 0.10
    assert payload["methods"] == ["Full", "BMC", "RND"]
    assert len(payload["average_ranks"]) == 3 and payload["n"] == 2

    again = tmp_path / "report2"
    assert main(["experiment", "--config", str(cfg_path), "--seed", "4",
                 "--out", str(again)]) == 0
    capsys.readouterr()
    first = (out_dir / "cells.csv").read_text()
    second = (again / "cells.csv").read_text()
    assert first != second

    assert main(["experiment", "--config", str(tmp_path / "absent.json"),
                 "--out", str(again)]) == 2
    broken = tmp_path / "broken.json"
    broken.write_text("{")
    assert main(["experiment", "--config", str(broken),
                 "--out", str(again)]) == 1
    capsys.readouterr()


def test_module_entry_point(data_csv, tmp_path):
    done = subprocess.run(
        [sys.executable, "-m", "jroc", "--help"],
        capture_output=True, text=True)
    assert done.returncode == 0
    assert "lattice" in done.stdout and "experiment" in done.stdout

    none = subprocess.run([sys.executable, "-m", "jroc"],
                          capture_output=True, text=True)
    assert none.returncode == 1

    pts = str(tmp_path / "p.csv")
    run = subprocess.run(
        [sys.executable, "-m", "jroc", "lattice", "--data", data_csv,
         "--model", "majority", "--out", pts],
        capture_output=True, text=True)
    assert run.returncode == 0 and "wrote 16 points" in run.stdout
