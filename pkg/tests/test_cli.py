import pytest

from tecds.cli import main, parse_solution
from tecds.errors import ParseError
from tecds.reductions import parse_gst, parse_subset_cds

K4 = "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n"
C5 = "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n"
P3 = "3 2\n0 1\n1 2\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def as_dict(out, sep):
    return dict(line.split(sep, 1) for line in out.splitlines())


class TestSolve:
    def test_k4(self, capsys, write):
        code, out, _ = run(capsys, "solve", "--input", write("k4.txt", K4), "--seed", "7", "--emit", "kv")
        fields = as_dict(out, "=")
        assert code == 0
        assert fields["status"] == "feasible" and fields["size_S"] == "3" and fields["size_J"] == "3"

    def test_p3_infeasible(self, capsys, write):
        code, out, _ = run(capsys, "solve", "--input", write("p3.txt", P3))
        assert code == 2 and out.startswith("status: infeasible")

    def test_parse_error_reports_line(self, capsys, write):
        code, _, err = run(capsys, "solve", "--input", write("bad.txt", "3 2\n0 1\n1 9\n"))
        assert code == 1 and "line 3" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "--input", str(tmp_path / "nope.txt"))
        assert code == 1 and err.startswith("error:")

    def test_usage_error_is_exit_one(self, capsys):
        assert main(["solve"]) == 1
        capsys.readouterr()

    def test_output_verifies(self, capsys, write):
        g = write("k4.txt", K4)
        code, out, _ = run(capsys, "solve", "--input", g, "--seed", "3")
        assert code == 0
        sol = write("sol.txt", out)
        code, out, _ = run(capsys, "verify", "--input", g, "--solution", sol)
        assert code == 0 and "status: feasible" in out

    def test_dot(self, capsys, write, tmp_path):
        dot = tmp_path / "cdg.dot"
        code, _, _ = run(capsys, "solve", "--input", write("k4.txt", K4), "--dot", str(dot))
        assert code == 0 and dot.read_text().startswith("graph cdg {")


class TestVerify:
    def test_cycle_all(self, capsys, write):
        sol = write("s.txt", "S: 0 1 2 3 4\nJ: 0-1 1-2 2-3 3-4 0-4\n")
        code, _, _ = run(capsys, "verify", "--input", write("c5.txt", C5), "--solution", sol)
        assert code == 0

    def test_cycle_missing_node(self, capsys, write):
        sol = write("s.txt", "S=0 1 2 3\nJ=0-1 1-2 2-3\n")
        code, out, _ = run(capsys, "verify", "--input", write("c5.txt", C5), "--solution", sol, "--emit", "kv")
        assert code == 2 and as_dict(out, "=")["two_edge_connected"] == "no"

    def test_absent_edge(self, capsys, write):
        sol = write("s.txt", "S: 0 1 2\nJ: 0-1 1-2 0-2\n")
        code, _, err = run(capsys, "verify", "--input", write("c5.txt", C5), "--solution", sol)
        assert code == 1 and "0-2" in err

    def test_edge_outside_s(self, capsys, write):
        sol = write("s.txt", "S: 0 1\nJ: 0-1 1-2\n")
        code, _, _ = run(capsys, "verify", "--input", write("c5.txt", C5), "--solution", sol)
        assert code == 1

    def test_parse_solution(self):
        assert parse_solution("status: x\nS: 1 2\nJ: 1-2\n") == ({1, 2}, {(1, 2)})
        with pytest.raises(ParseError):
            parse_solution("S: 1 2\n")
        with pytest.raises(ParseError):
            parse_solution("S: 1 2\nJ: 1_2\n")


class TestOracle:
    def test_k4(self, capsys, write):
        code, out, _ = run(capsys, "oracle", "--input", write("k4.txt", K4), "--emit", "kv")
        fields = as_dict(out, "=")
        assert code == 0 and fields["opt_S"] == "3" and fields["opt_J"] == "3"
        assert fields["opt_S_single_node_convention"] == "1"

    def test_star(self, capsys, write):
        code, out, _ = run(capsys, "oracle", "--input", write("star.txt", "4 3\n0 1\n0 2\n0 3\n"), "--emit", "kv")
        assert code == 2 and as_dict(out, "=")["opt_S_single_node_convention"] == "1"

    def test_cap_refusal(self, capsys, write):
        code, _, err = run(capsys, "oracle", "--input", write("c5.txt", C5), "--cap", "4")
        assert code == 1 and "refused" in err


class TestReduce:
    def test_gst_to_cds(self, capsys, write):
        code, out, _ = run(capsys, "reduce", "gst-to-cds", "--input", write("g.txt", "3 3\n0 1\n1 2\n0 2\n2\n0\n1\n"))
        g, q, r = parse_subset_cds(out)
        assert code == 0 and g.n == 5 and r == [3, 4]

    def test_cds_to_gst(self, capsys, write):
        code, out, _ = run(capsys, "reduce", "cds-to-gst", "--input", write("c.txt", "3 2\n0 1\n1 2\n1 2\n"))
        inst = parse_gst(out)
        assert code == 0 and inst.graph.n == 2 and inst.groups == (frozenset({1}),)

    def test_round(self, capsys, write):
        text = "4 3\n0 1 7\n1 2 10\n2 3 2\n2\n0\n3\n"
        code, out, _ = run(capsys, "reduce", "round", "--input", write("g.txt", text), "--m-guess", "10")
        assert code == 0 and parse_gst(out).graph.n == 7
        assert main(["reduce", "round", "--input", write("g2.txt", text)]) == 1
        capsys.readouterr()

    def test_partial(self, capsys, write):
        code, out, _ = run(capsys, "reduce", "partial", "--input", write("c.txt", "3 2\n0 1\n1 2\n1 2\n"))
        lines = out.splitlines()
        assert code == 0 and lines[0] == "5 4" and lines[-2] == "3"


class TestStats:
    def test_deterministic(self, capsys):
        args = ["stats", "--n", "6", "--count", "10", "--seed", "1", "--trials", "2"]
        a = run(capsys, *args)
        b = run(capsys, *args)
        assert a == b and a[0] == 0
        fields = as_dict(a[1], ": ")
        assert fields["instances"] == "10"
        assert int(fields["solver_feasible"]) == int(fields["oracle_feasible"])
