import json
import subprocess
import sys

import pytest

from qaoa_bounds.cli import RunConfig, config_from_args, main
from qaoa_bounds.graph import serialize_graph
from qaoa_bounds.graphs_lib import fig1_graph, heawood


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_upper_bound(capsys):
    code, out, _ = run(capsys, "upper-bound", "--p", "2")
    assert code == 0 and out.strip() == "6/7 ≈ 0.857143"


def test_bound_defaults_to_fixed_angles(capsys, tmp_path):
    path = tmp_path / "fig1.txt"
    path.write_text(serialize_graph(fig1_graph()))
    code, out, _ = run(capsys, "bound", str(path), "--p", "1")
    assert code == 0
    assert "angles (deg) 35.2644, 22.5000" in out
    assert "lower bound 0.7594" in out


def test_bound_named_graph_and_json(capsys, tmp_path):
    out_path = tmp_path / "r.json"
    code, out, _ = run(capsys, "bound", "heawood", "--p", "2", "--out", str(out_path))
    assert code == 0 and "lower bound 0.7559" in out
    assert json.loads(out_path.read_text())["counts"] == {"0": 21}


def test_bound_with_custom_angles(capsys):
    code, out, _ = run(capsys, "bound", "petersen", "--p", "1", "--angles", "30,20")
    assert code == 0 and "angles (deg) 30.0000, 20.0000" in out


def test_bound_rejects_non_cubic(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n0 2\n0 3\n1 2\n1 3\n")
    code, _, err = run(capsys, "bound", str(path), "--p", "1")
    assert code != 0
    assert "vertex 2 has degree 2" in err


def test_bound_reports_parse_line(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("0 1\n1 one\n")
    code, _, err = run(capsys, "bound", str(path))
    assert code != 0 and "line 2" in err


def test_bound_with_atlas_file(capsys, tmp_path):
    atlas = tmp_path / "a1.json"
    assert run(capsys, "atlas", "--p", "1", "--out", str(atlas), "--starts", "4", "--threads", "1")[0] == 0
    code, out, _ = run(capsys, "bound", "fig1", "--p", "1", "--atlas", str(atlas))
    assert code == 0 and "lower bound 0.7594" in out
    code, _, err = run(capsys, "bound", "fig1", "--p", "2", "--atlas", str(atlas))
    assert code != 0 and "not for p=2" in err


def test_atlas_p1_output(capsys, tmp_path):
    out_path = tmp_path / "a.json"
    code, out, _ = run(capsys, "atlas", "--p", "1", "--out", str(out_path), "--starts", "4", "--threads", "1")
    assert code == 0
    fs = [line.split("  f ")[1].split()[0] for line in out.splitlines() if "  f " in line]
    assert fs == ["0.6924", "0.6369", "0.5813"]
    doc = json.loads(out_path.read_text())
    assert doc["class_count"] == 3
    assert sorted(r["env_count"] for r in doc["records"]) == [1, 1, 2]
    assert sorted(r["reference_index"] for r in doc["records"]) == [0, 1, 2]


def test_atlas_p0(capsys, tmp_path):
    out_path = tmp_path / "a0.json"
    code, _, _ = run(capsys, "atlas", "--p", "0", "--out", str(out_path), "--threads", "1")
    assert code == 0 and json.loads(out_path.read_text())["class_count"] == 1


def test_verify_hierarchy_p1(capsys):
    code, out, _ = run(capsys, "verify-hierarchy", "--p", "1")
    assert code == 0
    assert out.strip().splitlines()[-1] == "PASS 4/4 environments, bound 0.6924"
    assert "delta +0" in out


def test_verify_hierarchy_p2_shard(capsys, tmp_path):
    ck = tmp_path / "e.jsonl"
    code, out, _ = run(capsys, "verify-hierarchy", "--p", "2", "--shard", "0/60", "--out", str(ck),
                       "--threads", "1")
    assert code == 0 and "shard 0/60" in out
    code, out, _ = run(capsys, "verify-hierarchy", "--p", "2", "--merge", str(ck))
    assert "published 7058" in out


def test_optimize(capsys):
    code, out, _ = run(capsys, "optimize", "--p", "1", "--subgraph", "0", "--starts", "5")
    assert code == 0 and "f_opt 0.692450" in out
    code, out, _ = run(capsys, "optimize", "--p", "1", "--mesh", "6")
    assert "4 maxima" in out


def test_plotdata(capsys, tmp_path):
    out_path = tmp_path / "plot.csv"
    code, _, _ = run(capsys, "plotdata", "--p", "2", "--out", str(out_path))
    rows = out_path.read_text().splitlines()
    assert code == 0
    assert rows[1].startswith("1,0.6924,") and rows[2].startswith("2,0.7559,")
    assert rows[3].startswith("3,,")


def test_plotdata_default_covers_p3(capsys):
    code, out, _ = run(capsys, "plotdata")
    rows = out.splitlines()
    assert code == 0
    assert [r.split(",")[:2] for r in rows[1:4]] == [["1", "0.6924"], ["2", "0.7559"], ["3", "0.7924"]]


def test_tilings(capsys):
    code, out, _ = run(capsys, "tilings", "--p", "1")
    assert code == 0
    assert "even: 8 vertices" in out and "odd: 10 vertices" in out
    assert "not bipartite" in out


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("QAOA_BOUNDS_P", "2")
    monkeypatch.setenv("QAOA_BOUNDS_THREADS", "3")
    cfg = config_from_args(["upper-bound"])
    assert (cfg.p, cfg.threads) == (2, 3)
    assert config_from_args(["upper-bound", "--p", "1"]).p == 1


def test_validation_errors(capsys, tmp_path):
    assert run(capsys, "bound", "no-such-graph")[0] != 0
    assert run(capsys, "verify-hierarchy", "--p", "3")[0] != 0
    assert run(capsys, "bound", "petersen", "--p", "1", "--angles", "1,2,3,4")[0] != 0
    assert run(capsys, "upper-bound", "--p", "1", "--out", str(tmp_path / "nope" / "x"))[0] != 0
    with pytest.raises(ValueError):
        RunConfig("bound", 1, threads=0).validate()


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "qaoa_bounds.cli", "upper-bound", "--p", "1"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "4/5 ≈ 0.800000"
