from __future__ import annotations

import json
import subprocess
import sys

import pytest

from graphpoly.cli import main
from graphpoly.corpus import full_corpus, named_corpus, random_corpus
from graphpoly.multigraph import complete, cycle, path
from graphpoly.polynomial import Poly, poly_from_json
from graphpoly.verify import FAIL, PASS, SKIPPED, Settings, run_suite


@pytest.fixture
def graphs(tmp_path):
    files = {
        "k4": complete(4),
        "c4": cycle(4),
        "c5": cycle(5),
        "tree": path(5),
    }
    out = {}
    for name, g in files.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(g.to_edge_list())
        out[name] = str(p)
    bad = tmp_path / "bad.txt"
    bad.write_text("3 2\n0 1\n1 q\n")
    out["bad"] = str(bad)
    return out


def run_cli(capsys, *argv) -> tuple[int, dict | None]:
    code = main(list(argv))
    text = capsys.readouterr().out
    return code, (json.loads(text) if text.strip() else None)


class TestCompute:
    def test_theta_k4(self, capsys, graphs):
        code, out = run_cli(capsys, "compute", "theta", "--graph", graphs["k4"], "--algorithm", "dc")
        assert code == 0
        p = poly_from_json(out["polynomial"])
        assert p.coeffs == {(0, 0): 1, (3, 0): 4, (4, 0): 3, (5, 2): 6, (6, 4): 1}

    def test_omega_md(self, capsys, graphs):
        code, out = run_cli(capsys, "compute", "omega", "--graph", graphs["c5"], "--route", "md", "--json")
        assert code == 0 and poly_from_json(out["polynomial"]) == Poly({0: 1, 5: 1})

    def test_matching(self, capsys, graphs):
        code, out = run_cli(capsys, "compute", "matching", "--graph", graphs["k4"])
        assert out["polynomial"]["vars"] == ["x"]
        assert poly_from_json(out["polynomial"]) == Poly({4: 1, 2: -6, 0: 3})

    def test_tutte(self, capsys, graphs):
        code, out = run_cli(capsys, "compute", "tutte", "--graph", graphs["c4"])
        assert code == 0 and out["polynomial"]["vars"] == ["x", "y"]

    def test_output_file(self, capsys, graphs, tmp_path):
        dest = tmp_path / "out.json"
        code, out = run_cli(capsys, "compute", "omega", "--graph", graphs["k4"], "--output", str(dest))
        assert code == 0 and out is None
        assert json.loads(dest.read_text())["polynomial"]["terms"][-1]["coeff"] == "16"

    def test_parse_error(self, capsys, graphs):
        assert main(["compute", "theta", "--graph", graphs["bad"]]) == 2
        assert "line 3" in capsys.readouterr().err

    def test_missing_file(self, capsys):
        assert main(["compute", "theta", "--graph", "/nonexistent/g.txt"]) == 2

    def test_missing_graph_flag(self, capsys):
        assert main(["compute", "theta"]) == 2

    def test_guard(self, capsys, graphs):
        assert main(["compute", "theta", "--graph", graphs["k4"], "--algorithm", "enum", "--max-edges", "4"]) == 3
        assert "guard" in capsys.readouterr().err

    def test_bad_flag(self, capsys):
        assert main(["compute", "theta", "--algorithm", "nope"]) == 2
        assert main(["compute", "theta", "--max-edges", "0"]) == 2


class TestOtherCommands:
    def test_zeros(self, capsys, graphs):
        code, out = run_cli(capsys, "zeros", "--graph", graphs["k4"])
        assert code == 0 and out["in_annulus"]
        assert all(abs(abs(complex(r["re"], r["im"])) - 0.5) < 1e-8 for r in out["roots"])

    def test_zeros_precondition(self, capsys, graphs):
        assert main(["zeros", "--graph", graphs["tree"]]) == 2

    def test_count(self, capsys, graphs):
        code, out = run_cli(capsys, "count", "subcoregraphs", "--graph", graphs["k4"])
        assert out["count"] == 15 and out["bounds"] == {"lower": 8, "upper": 15}
        code, out = run_cli(capsys, "count", "by-degree3", "--graph", graphs["k4"])
        assert out["by_degree3"] == {"0": 8, "1": 6, "2": 1}

    def test_bethe_tree(self, capsys, graphs):
        code, out = run_cli(capsys, "bethe", "--graph", graphs["tree"], "--draws", "5")
        assert code == 0 and out["max_rel_error"] < 1e-10 and out["failures"] == []

    def test_bethe_cycle(self, capsys, graphs):
        code, out = run_cli(capsys, "bethe", "--graph", graphs["c4"], "--draws", "20", "--seed", "4")
        assert code == 0 and out["draws"] == 20 and out["max_rel_error"] < 1e-8

    def test_bethe_domain(self, capsys, graphs):
        code, out = run_cli(capsys, "bethe", "--graph", graphs["k4"], "--draws", "3", "--beta-scale", "100")
        assert code == 0
        assert out["max_rel_error"] is None
        assert [f["reason"] for f in out["failures"]] == ["domain"] * 3

    def test_corpus(self, capsys):
        code, out = run_cli(capsys, "corpus", "--random-count", "3")
        names = [g["name"] for g in out["graphs"]]
        assert "K4" in names and "petersen" in names and len(names) == len(named_corpus()) + 5 + 3

    def test_module_entry_point(self, graphs):
        res = subprocess.run([sys.executable, "-m", "graphpoly", "compute", "omega", "--graph", graphs["k4"]],
                             capture_output=True, text=True, check=True)
        assert json.loads(res.stdout)["route"] == "dc"


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ["verify", "--random-count", "10", "--seed", "5"],
        ["bethe", "--draws", "4", "--seed", "2"],
        ["zeros"],
    ])
    def test_byte_identical(self, capsys, graphs, argv):
        if argv[0] != "verify":
            argv = argv + ["--graph", graphs["c5"]]
        main(argv)
        first = capsys.readouterr().out
        main(argv)
        assert capsys.readouterr().out == first


class TestVerify:
    def test_small_run(self, capsys):
        code, out = run_cli(capsys, "verify", "--random-count", "20")
        assert code == 0 and out["summary"]["fail"] == 0
        keys = [(r["check_name"], r["graph_descriptor"]) for r in out["records"]]
        assert keys == sorted(keys)
        assert "elapsed_ms" not in out["records"][0]

    def test_timings_flag(self, capsys):
        code, out = run_cli(capsys, "verify", "--random-count", "1", "--timings")
        assert all("elapsed_ms" in r for r in out["records"])

    def test_self_test_fails_with_reproducer(self, capsys):
        code, out = run_cli(capsys, "verify", "--random-count", "2", "--self-test")
        assert code == 1
        fails = [r for r in out["records"] if r["status"] == "fail"]
        assert [r["check_name"] for r in fails] == ["self_test_corrupted_expectation"]
        assert fails[0]["reproducer"]["edge_list"].startswith("4 6\n")

    def test_guard_skips(self, capsys):
        code, out = run_cli(capsys, "verify", "--random-count", "5", "--max-edges", "6")
        assert code == 0
        skipped = {r["graph_descriptor"] for r in out["records"] if r["status"] == "skipped(guard)"}
        assert {"K4^(2)", "petersen", "K5"} <= skipped
        assert "C3" not in skipped

    def test_user_graph(self, capsys, graphs):
        code, out = run_cli(capsys, "verify", "--random-count", "0", "--graph", graphs["c5"])
        assert code == 0
        assert any(r["graph_descriptor"] == "user:c5.txt" for r in out["records"])

    def test_default_corpus_is_large(self):
        corpus = full_corpus()
        assert sum(1 for n, _ in corpus if n.startswith("rand")) >= 200
        assert random_corpus(0, 5) == random_corpus(0, 5)

    def test_records_api(self):
        rep = run_suite(named_corpus()[:6], Settings(max_edges=2))
        statuses = {r.status for r in rep.records}
        assert statuses <= {PASS, FAIL, SKIPPED} and SKIPPED in statuses and rep.ok
