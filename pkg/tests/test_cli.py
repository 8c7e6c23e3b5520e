import csv
import io
import json
import math

import pytest

from gencol.cli import main
from gencol.errors import InputError
from gencol.generators import random_maximal_planar
from gencol.harness import CSV_COLUMNS, parse_r_range, strategy_bounds, verify
from gencol.io import format_edge_list


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_exact_on_c5(capsys):
    code, out, _ = run(capsys, "exact", "--family", "cycle", "--param", "n=5", "--r", "1")
    assert code == 0
    row = json.loads(out)["rows"][0]
    assert row["value"] == 3 and row["mode"] == "strong" and sorted(row["order"]) == list(range(5))
    code, out, _ = run(capsys, "exact", "--family", "path", "--param", "n=7", "--r", "inf", "--mode", "weak")
    assert json.loads(out)["rows"][0]["value"] == 3


def test_exact_capacity_and_input_errors(capsys):
    code, _, err = run(capsys, "exact", "--family", "path", "--param", "n=30", "--r", "1")
    assert code == 3 and "--cap" in err
    code, _, err = run(capsys, "exact", "--r", "1")
    assert code == 2 and "--input" in err
    code, _, err = run(capsys, "exact", "--family", "grid", "--param", "n=3")
    assert code == 2 and "'m'" in err
    code, _, _ = run(capsys, "exact", "--family", "cycle", "--param", "n=5", "--r", "x..y")
    assert code == 2


def test_evaluate_given_order(tmp_path, capsys):
    g = tmp_path / "p.txt"
    g.write_text("0 1\n1 2\n2 3\n")
    o = tmp_path / "o.txt"
    o.write_text("3 2 1 0\n")
    code, out, _ = run(capsys, "evaluate", "--input", str(g), "--order", str(o), "--r", "1..3")
    rep = json.loads(out)
    assert code == 0 and rep["strategy"] == "given"
    assert [row["weak"] for row in rep["rows"]] == [2, 3, 4]
    assert [row["strong"] for row in rep["rows"]] == [2, 2, 2]


def test_evaluate_planar_strategy_with_embedding_file(tmp_path, capsys):
    g = random_maximal_planar(25, 3)
    (tmp_path / "g.txt").write_text(format_edge_list(g.graph))
    (tmp_path / "rot.txt").write_text(g.embedding.to_lines())
    code, out, _ = run(capsys, "evaluate", "--input", str(tmp_path / "g.txt"), "--embedding",
                       str(tmp_path / "rot.txt"), "--strategy", "lexbfs-planar", "--r", "1..4", "--mode", "strong")
    rep = json.loads(out)
    assert code == 0
    assert all(row["strong"] <= 5 * row["r"] + 1 for row in rep["rows"])
    code, _, err = run(capsys, "evaluate", "--input", str(tmp_path / "g.txt"), "--strategy", "ipd-planar")
    assert code == 2 and "embedding" in err


def test_decompose_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "decompose", "--family", "series-parallel", "--param", "n=30", "--seed", "4",
                       "--strategy", "h-ipd", "--H", "K4", "--apex", "0")
    rep = json.loads(out)
    assert code == 0 and rep["width"] <= 9 and sum(map(len, rep["parts"])) == 30
    code, out, _ = run(capsys, "decompose", "--family", "complete", "--param", "n=5", "--strategy", "kt-flat",
                       "--t", "5")
    assert code == 1 and len(json.loads(out)["certificate"]) == 5
    (tmp_path / "claw.txt").write_text("0 1\n0 2\n0 3\n")
    code, out, _ = run(capsys, "decompose", "--family", "path", "--param", "n=9", "--strategy", "h-ipd",
                       "--H", str(tmp_path / "claw.txt"), "--apex", "0", "--out", str(tmp_path / "d.json"))
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "d.json").read_text())["params"] == {"h": 0, "alpha": 3}
    code, _, err = run(capsys, "decompose", "--family", "path", "--param", "n=9", "--strategy", "h-ipd")
    assert code == 2 and "--apex" in err


def test_verify_is_deterministic(tmp_path, capsys):
    args = ["verify", "--seed", "7", "--count", "2", "--n", "10..30", "--r", "1..3"]
    code1, out1, _ = run(capsys, *args)
    code2, out2, _ = run(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["passed"] and not rep["builder_failures"]
    strategies = {row["strategy"] for row in rep["rows"]}
    assert strategies == {"ipd-planar", "lexbfs-planar", "kt-flat", "h-ipd"}


def test_verify_single_graph_and_csv(capsys):
    code, out, _ = run(capsys, "verify", "--family", "random-maximal-planar", "--param", "n=40", "--seed", "2",
                       "--strategy", "ipd-planar", "--strategy", "lexbfs-planar", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and len(rows) == 10
    assert tuple(rows[0]) == CSV_COLUMNS


def test_sweep_grid_costs_non_decreasing(capsys):
    code, out, _ = run(capsys, "sweep", "--family", "grid", "--param", "m=20", "--param", "n=20",
                       "--strategy", "lexbfs-planar", "--r", "1..6")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0 and [int(r["r"]) for r in rows] == list(range(1, 7))
    costs = [int(r["cost_strong"]) for r in rows]
    assert costs == sorted(costs)
    assert all(int(r["cost_strong"]) <= int(r["bound_strong"]) for r in rows)
    code, out, _ = run(capsys, "sweep", "--family", "grid", "--param", "m=5", "--param", "n=5", "--format", "json")
    assert {row["strategy"] for row in json.loads(out)["rows"]} == {"ipd-planar", "lexbfs-planar"}


def test_strategy_bounds_closed_forms():
    for r in range(0, 8):
        s = 2 * r + 1
        assert strategy_bounds("ipd-planar", r) == (3 * s, (r + 2) * (r + 1) // 2 * s)
        assert strategy_bounds("lexbfs-planar", r) == (5 * r + 1, None)
        for t in (4, 5, 6):
            assert strategy_bounds("kt-flat", r, t=t) == ((t - 1) * (t - 3) * s,
                                                          math.comb(r + t - 2, t - 2) * (t - 3) * s)
        assert strategy_bounds("h-ipd", r, h=3, alpha=0)[0] == 3 * s
        assert strategy_bounds("h-ipd", r, h=0, alpha=3)[0] == 3
        assert strategy_bounds("degeneracy", r) == (None, None)
    with pytest.raises(InputError):
        strategy_bounds("magic", 1)


def test_report_rows_reproduce_bounds():
    rep = verify(3, 1, (10, 20), [1, 2])
    for row in rep["rows"]:
        assert row["pass"] == (row["cost_strong"] <= (row["bound_strong"] or math.inf)
                               and row["cost_weak"] <= (row["bound_weak"] or math.inf))
        if row["strategy"] == "ipd-planar":
            assert row["bound_strong"] == 3 * (2 * row["r"] + 1)


def test_parse_r_range():
    assert parse_r_range("3") == [3]
    assert parse_r_range("1..4") == [1, 2, 3, 4]
    for bad in ("4..1", "-1", "a", "1..b"):
        with pytest.raises(InputError):
            parse_r_range(bad)
