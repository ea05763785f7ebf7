"""End-to-end command line behaviour, run in process through main()."""

import pytest

from graphcollapse.cli import main
from graphcollapse.contract import ReductionTrace
from graphcollapse.factories import complete, cycle, path
from graphcollapse.graphs import load_graph, to_edge_list_text

from helpers import SIX_POINT_ROWS, gstar


def write_graph(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(to_edge_list_text(g))
    return str(p)


def write_text(tmp_path, text, name):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


SQUARE_POINTS = "0 0\n1 0\n1 1\n0 1\n"


class TestCheck:
    def test_positive(self, tmp_path, capsys):
        assert main(["check", write_graph(tmp_path, path(4))]) == 0
        assert capsys.readouterr().out == "IS: yes\n"

    def test_negative(self, tmp_path, capsys):
        assert main(["check", write_graph(tmp_path, cycle(4))]) == 0
        assert capsys.readouterr().out == "IS: no\n"

    def test_any_order(self, tmp_path, capsys):
        assert main(
            ["check", "--any-order", write_graph(tmp_path, path(4))]
        ) == 0
        assert capsys.readouterr().out == "IS: yes\n"

    def test_with_collapse(self, tmp_path, capsys):
        assert main(
            ["check", "--with-collapse", write_graph(tmp_path, complete(4))]
        ) == 0
        assert capsys.readouterr().out == "IS: yes\nC: yes\n"

    def test_collapse_budget_exhausted(self, tmp_path, capsys):
        rc = main(
            [
                "check", "--with-collapse", "--budget", "2",
                write_graph(tmp_path, gstar()),
            ]
        )
        assert rc == 4
        assert capsys.readouterr().out == "IS: yes\nC: unknown\n"


class TestReduce:
    def test_reduces_to_point(self, tmp_path, capsys):
        assert main(["reduce", write_graph(tmp_path, path(4))]) == 0
        out = capsys.readouterr().out
        assert out.splitlines()[-1] == "1 0"

    def test_trace_file_replays(self, tmp_path, capsys):
        g = gstar()
        src = write_graph(tmp_path, g)
        trace_path = tmp_path / "trace.txt"
        assert main(["reduce", "--trace", str(trace_path), src]) == 0
        capsys.readouterr()
        trace = ReductionTrace.from_text(trace_path.read_text(), g)
        assert trace.replay(g).n == 1

    def test_stuck_graph_returned_unchanged(self, tmp_path, capsys):
        assert main(["reduce", write_graph(tmp_path, cycle(4))]) == 0
        out = capsys.readouterr().out
        reduced = load_graph_text(out)
        assert reduced.n == 4 and reduced.m == 4

    def test_edge_extended(self, tmp_path, capsys):
        # C4 is stuck for both the vertex and the edge passes
        assert main(
            ["reduce", "--edges", write_graph(tmp_path, cycle(4))]
        ) == 0
        reduced = load_graph_text(capsys.readouterr().out)
        assert reduced == cycle(4)


def load_graph_text(text):
    import tempfile, os

    fd, name = tempfile.mkstemp(suffix=".txt")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        return load_graph(name)
    finally:
        os.unlink(name)


class TestCollapse:
    def test_positive_with_witness(self, tmp_path, capsys):
        wit = tmp_path / "wit.txt"
        rc = main(
            ["collapse", "--witness", str(wit), write_graph(tmp_path, complete(4))]
        )
        assert rc == 0
        assert capsys.readouterr().out == "collapsible: yes\n"
        lines = wit.read_text().splitlines()
        assert len(lines) == 7
        assert all(" < " in line for line in lines)

    def test_negative(self, tmp_path, capsys):
        assert main(["collapse", write_graph(tmp_path, cycle(4))]) == 0
        assert capsys.readouterr().out == "collapsible: no\n"

    def test_budget_exhausted(self, tmp_path, capsys):
        rc = main(
            ["collapse", "--budget", "2", write_graph(tmp_path, gstar())]
        )
        assert rc == 4
        assert capsys.readouterr().out == "collapsible: unknown\n"


class TestHomology:
    def test_default_mod_two(self, tmp_path, capsys):
        assert main(["homology", write_graph(tmp_path, cycle(4))]) == 0
        assert capsys.readouterr().out == "H_0 1\nH_1 1\n"

    def test_integers(self, tmp_path, capsys):
        assert main(
            ["homology", "--integers", write_graph(tmp_path, cycle(6))]
        ) == 0
        assert capsys.readouterr().out == "H_0 1\nH_1 1\n"

    def test_odd_prime(self, tmp_path, capsys):
        assert main(
            ["homology", "--mod", "3", write_graph(tmp_path, complete(4))]
        ) == 0
        assert capsys.readouterr().out == "H_0 1\nH_1 0\nH_2 0\nH_3 0\n"

    def test_composite_modulus_rejected(self, tmp_path, capsys):
        rc = main(["homology", "--mod", "4", write_graph(tmp_path, cycle(4))])
        assert rc == 3
        assert "error:" in capsys.readouterr().err

    def test_max_dim(self, tmp_path, capsys):
        assert main(
            ["homology", "--max-dim", "1", write_graph(tmp_path, complete(4))]
        ) == 0
        assert capsys.readouterr().out == "H_0 1\nH_1 0\n"


class TestVr:
    def test_points_to_csv(self, tmp_path, capsys):
        pts = write_text(tmp_path, SQUARE_POINTS, "pts.txt")
        assert main(["vr", "--points", pts]) == 0
        out = capsys.readouterr().out
        lines = out.splitlines()
        assert lines[0] == "dim,birth_index,death_index,birth_eps,death_eps"
        assert "1,1,2,1,2" in lines

    def test_oracle_match(self, tmp_path, capsys):
        pts = write_text(tmp_path, SQUARE_POINTS, "pts.txt")
        assert main(["vr", "--points", pts, "--oracle", "--jobs", "2"]) == 0
        assert capsys.readouterr().out.endswith("oracle: MATCH\n")

    def test_matrix_input(self, tmp_path, capsys):
        rows = "\n".join(" ".join(r) for r in SIX_POINT_ROWS)
        mat = write_text(tmp_path, rows + "\n", "mat.txt")
        assert main(["vr", "--matrix", mat, "--oracle"]) == 0
        out = capsys.readouterr().out
        assert out.endswith("oracle: MATCH\n")
        assert any(line.startswith("1,2,4,") for line in out.splitlines())

    def test_explicit_thresholds(self, tmp_path, capsys):
        pts = write_text(tmp_path, SQUARE_POINTS, "pts.txt")
        assert main(["vr", "--points", pts, "--thresholds", "1,2"]) == 0
        out1 = capsys.readouterr().out
        assert main(["vr", "--points", pts, "--thresholds", "0,1,2"]) == 0
        assert capsys.readouterr().out == out1

    def test_bad_threshold_list(self, tmp_path, capsys):
        pts = write_text(tmp_path, SQUARE_POINTS, "pts.txt")
        rc = main(["vr", "--points", pts, "--thresholds", "zz"])
        assert rc == 3
        assert "error:" in capsys.readouterr().err

    def test_malformed_points(self, tmp_path, capsys):
        bad = write_text(tmp_path, "0 0\nx y\n", "bad.txt")
        rc = main(["vr", "--points", bad])
        assert rc == 3
        assert "bad coordinate" in capsys.readouterr().err

    def test_deterministic_output(self, tmp_path, capsys):
        pts = write_text(tmp_path, SQUARE_POINTS, "pts.txt")
        main(["vr", "--points", pts, "--oracle"])
        first = capsys.readouterr().out
        main(["vr", "--points", pts, "--oracle"])
        assert capsys.readouterr().out == first


class TestCensusCommand:
    def test_small_run(self, capsys):
        assert main(["census", "--max-n", "4"]) == 0
        out = capsys.readouterr().out
        assert "n 4 6" in out
        assert "implication holds: yes" in out

    def test_check_order(self, capsys):
        assert main(["census", "--max-n", "4", "--check-order"]) == 0
        assert "order-gap 0" in capsys.readouterr().out

    def test_out_dir(self, tmp_path, capsys):
        assert main(["census", "--max-n", "3", "--out", str(tmp_path)]) == 0
        capsys.readouterr()
        assert (tmp_path / "census_n3.txt").exists()

    def test_bad_max_n(self, capsys):
        rc = main(["census", "--max-n", "0"])
        assert rc == 3
        assert "max_n" in capsys.readouterr().err


class TestErrors:
    def test_no_arguments_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unknown_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_vr_needs_a_source(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["vr"])
        assert exc.value.code == 2

    def test_missing_file(self, capsys):
        rc = main(["check", "/nonexistent/graph.txt"])
        assert rc == 3
        assert "error:" in capsys.readouterr().err

    def test_malformed_graph(self, tmp_path, capsys):
        bad = write_text(tmp_path, "2 1\n0 0\n", "bad.txt")
        rc = main(["check", bad])
        assert rc == 3
        assert "error:" in capsys.readouterr().err
