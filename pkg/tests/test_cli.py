import csv
import io
import json
import subprocess
import sys

import numpy as np
import pytest

from zqspin.cli import CSV_HEADER, main, run_symcheck
from zqspin.generators import grid_graph, random_connected_multigraph, random_tree, single_edge, triangle
from zqspin.io import graph_to_json, write_json
from zqspin.model import general
from zqspin.transforms import SymmetryElement


def _graph(tmp_path, g, name="g.json"):
    p = tmp_path / name
    write_json(p, graph_to_json(g))
    return str(p)


def _model(tmp_path, q, edges, beta=1.0, name="m.json"):
    p = tmp_path / name
    write_json(p, {"q": q, "beta": beta, "edges": edges})
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_partition_single_edge(tmp_path, capsys):
    g = _graph(tmp_path, single_edge())
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}])
    code, out, _ = _run(capsys, "partition", "--graph", g, "--model", m)
    assert code == 0
    row = json.loads(out)["results"][0]
    assert row["beta"] == 1.0
    z = row["value"]
    value = complex(*z["mantissa"]) * 2.0 ** z["exponent"]
    assert value.real == pytest.approx(2 * (np.e + 1 / np.e), rel=1e-12)
    # the quoted 6.1723188 agrees to about 6e-7 relative
    assert value.real == pytest.approx(6.1723188, rel=1e-6)


def test_tree_dispatches_to_closed_form(tmp_path, capsys):
    t = random_tree(np.random.default_rng(3), 7)
    g = _graph(tmp_path, t)
    m = _model(tmp_path, 3, [{"type": "potts", "J": 0.4}] * t.num_edges)
    code, out, _ = _run(capsys, "partition", "--graph", g, "--model", m)
    assert code == 0
    assert json.loads(out)["results"][0]["method"] == "closed"


def test_csv_sweep_on_grid(tmp_path, capsys):
    gg = grid_graph(4, 4)
    g = _graph(tmp_path, gg)
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}] * gg.num_edges)
    code, out, _ = _run(capsys, "partition", "--graph", g, "--model", m, "--beta-range", "0.1:1.0:10", "--format", "csv")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == CSV_HEADER
    assert out.splitlines()[0] == "beta,value_re_mantissa,value_im_mantissa,exponent2,value_decimal,method,width,cost"
    body = rows[1:]
    assert len(body) == 10
    betas = [float(r[0]) for r in body]
    assert betas == sorted(betas) and betas[0] == pytest.approx(0.1) and betas[-1] == pytest.approx(1.0)
    # Z grows with beta for a ferromagnet
    values = [float(r[1]) * 2.0 ** int(r[3]) for r in body]
    assert values == sorted(values)
    for r in body:
        assert float(r[4]) == pytest.approx(float(r[1]) * 2.0 ** int(r[3]), rel=1e-15)


def test_sweep_is_deterministic(tmp_path, capsys):
    gg = grid_graph(3, 4)
    g = _graph(tmp_path, gg)
    m = _model(tmp_path, 3, [{"type": "clock", "J": 0.7}] * gg.num_edges)
    argv = ["partition", "--graph", g, "--model", m, "--beta-range", "0.2:2:12", "--format", "csv", "--seed", "4"]
    outs = {_run(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_parse_errors_exit_2(tmp_path, capsys):
    g = _graph(tmp_path, triangle())
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}] * 3)
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert _run(capsys, "partition", "--graph", str(bad), "--model", m)[0] == 2
    assert _run(capsys, "partition", "--graph", str(tmp_path / "missing.json"), "--model", m)[0] == 2
    assert _run(capsys, "partition", "--graph", g, "--model", m, "--beta-range", "1:2")[0] == 2
    wrong = _model(tmp_path, 2, [{"type": "nope", "J": 1.0}] * 3, name="w.json")
    code, _, err = _run(capsys, "partition", "--graph", g, "--model", wrong)
    assert code == 2 and "unknown edge type" in err


def test_engine_error_exit_3(tmp_path, capsys):
    gg = grid_graph(4, 4)
    g = _graph(tmp_path, gg)
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}] * gg.num_edges)
    code, _, err = _run(capsys, "partition", "--graph", g, "--model", m, "--method", "contract", "--mem-budget", "4")
    assert code == 3 and "WidthTooLarge" in err


def test_dual_triangle_verify(tmp_path, capsys):
    g = _graph(tmp_path, triangle())
    m = _model(tmp_path, 3, [{"type": "potts", "J": 0.9}] * 3)
    out_prefix = tmp_path / "out" / "tri"
    code, out, _ = _run(capsys, "dual", "--graph", g, "--model", m, "--out", str(out_prefix), "--verify")
    assert code == 0
    report = json.loads(out)
    assert report["relative_error"] < 1e-9
    dual_graph = json.loads((tmp_path / "out" / "tri.graph.json").read_text())
    assert dual_graph["n"] == 2 and len(dual_graph["edges"]) == 3
    cert = json.loads((tmp_path / "out" / "tri.cert.json").read_text())
    assert cert["r"] == {"numerator": -1, "denominator": 2}
    weights = json.loads((tmp_path / "out" / "tri.model.json").read_text())["edges"][0]["weights"]
    assert all(len(pair) == 2 for pair in weights)


def test_dual_grid_verify(tmp_path, capsys):
    for rows in (3, 4):
        gg = grid_graph(rows, rows)
        g = _graph(tmp_path, gg)
        m = _model(tmp_path, 2, [{"type": "potts", "J": 1.0}] * gg.num_edges)
        code, out, _ = _run(capsys, "dual", "--graph", g, "--model", m, "--out", str(tmp_path / "d"), "--verify")
        assert code == 0
        assert json.loads(out)["relative_error"] < 1e-9


def test_dual_output_round_trips_into_partition(tmp_path, capsys):
    gg = grid_graph(3, 3)
    g = _graph(tmp_path, gg)
    m = _model(tmp_path, 3, [{"type": "clock", "J": 0.5}] * gg.num_edges)
    prefix = tmp_path / "rt"
    assert _run(capsys, "dual", "--graph", g, "--model", m, "--out", str(prefix), "--verify")[0] == 0
    code, out, _ = _run(
        capsys, "partition", "--graph", f"{prefix}.graph.json", "--model", f"{prefix}.model.json", "--method", "brute"
    )
    assert code == 0
    assert json.loads(out)["results"][0]["beta"] is None


def test_dual_needs_embedding_exit_3(tmp_path, capsys):
    g = _graph(tmp_path, grid_graph(3, 3, embed=False))
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}] * 12)
    code, _, err = _run(capsys, "dual", "--graph", g, "--model", m, "--out", str(tmp_path / "x"))
    assert code == 3 and "MissingEmbedding" in err


def test_symcheck_random_instance(tmp_path, capsys):
    rng = np.random.default_rng(11)
    gg = random_connected_multigraph(rng, 6, 9)
    g = _graph(tmp_path, gg)
    m = _model(tmp_path, 3, [{"table": list(rng.uniform(-2, 2, 3))} for _ in range(gg.num_edges)], beta=0.5)
    code, out, _ = _run(capsys, "symcheck", "--graph", g, "--model", m, "--count", "50", "--seed", "2")
    assert code == 0
    report = json.loads(out)
    assert report["count"] == 50 and report["ok"] and report["max_relative_deviation"] < 1e-9


def test_symcheck_zero_count(tmp_path, capsys):
    g = _graph(tmp_path, triangle())
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}] * 3)
    code, out, _ = _run(capsys, "symcheck", "--graph", g, "--model", m, "--count", "0")
    assert code == 0
    assert json.loads(out)["max_relative_deviation"] == 0


def test_symcheck_corrupted_element_fails(tmp_path, capsys, monkeypatch):
    g = triangle()
    m = general(3, [[0.3, -0.8, 0.1], [1.0, 0.0, -0.4], [0.2, 0.5, -1.2]], 1.0)
    bad = SymmetryElement(3, np.array([1, 0, 0]), np.zeros(3, dtype=int))
    assert run_symcheck(g, m, [bad]) > 1e-3

    import zqspin.cli as cli

    monkeypatch.setattr(cli, "symmetry_group_sample", lambda *a, **k: [bad])
    gp = _graph(tmp_path, g)
    mp = _model(tmp_path, 3, [{"table": list(r)} for r in m.energies])
    code, out, _ = _run(capsys, "symcheck", "--graph", gp, "--model", mp)
    assert code == 1 and json.loads(out)["ok"] is False


def test_codeinfo_triangle(tmp_path, capsys):
    g = _graph(tmp_path, triangle())
    code, out, _ = _run(capsys, "codeinfo", "--graph", g, "--q", "2")
    assert code == 0
    info = json.loads(out)
    assert info["cut_code"]["cardinality"] == 4
    assert info["cut_code"]["independent_generators"] == 2
    assert info["cut_code"]["matches"] and info["product_equals_q_pow_N"]


def test_codeinfo_tree_and_model_q(tmp_path, capsys):
    t = random_tree(np.random.default_rng(1), 6)
    g = _graph(tmp_path, t)
    m = _model(tmp_path, 5, [{"type": "potts", "J": 1.0}] * t.num_edges)
    code, out, _ = _run(capsys, "codeinfo", "--graph", g, "--model", m)
    assert code == 0
    info = json.loads(out)
    assert info["q"] == 5 and info["cycle_code"]["trivial"]
    assert _run(capsys, "codeinfo", "--graph", g)[0] == 2


def test_tdinfo_grid(tmp_path, capsys):
    g = _graph(tmp_path, grid_graph(4, 4))
    code, out, _ = _run(capsys, "tdinfo", "--graph", g)
    assert code == 0
    info = json.loads(out)
    assert info["width"] == 4 and info["strategy"] == "min_fill"
    assert sum(info["bag_size_histogram"].values()) == info["bags"]


def test_console_entry_point(tmp_path):
    g = _graph(tmp_path, single_edge())
    m = _model(tmp_path, 2, [{"type": "ising", "J": 1.0}])
    proc = subprocess.run(
        [sys.executable, "-m", "zqspin.cli", "partition", "--graph", g, "--model", m, "--format", "csv"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.splitlines()[0] == ",".join(CSV_HEADER)
