import io
import subprocess
import sys

import pytest

from lcadag.cli import main
from lcadag.io import parse_dag

FIG1 = "i j < i k\nj k < j l\nj l < i k\n"
NOT_SUBSET_REAL = "x x < a b\ny y < a b\na b < x y\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_check_realizable(write):
    code, out = run("check", write("fig1.txt", FIG1))
    assert code == 0
    assert out.startswith("realizable: yes")


def test_check_not_realizable_prints_x2(write):
    code, out = run("check", write("bad.txt", NOT_SUBSET_REAL))
    assert code == 1
    assert "X2 violation: a b < x y in tc(R) but x y < a b in R+" in out


def test_check_strict(write):
    path = write("sym.txt", "a b < x y\nx y < a b\n")
    assert run("check", path)[0] == 0
    code, out = run("check", path, "--strict")
    assert code == 1
    assert "strictly realizable: no" in out and "asymmetry witness" in out


def test_closure_of_empty_file(write):
    code, out = run("closure", write("empty.txt", "leaves: a b\n"))
    assert code == 0
    assert out == "a a < a a\nb b < b b\n"


def test_closure_is_sorted_and_reflexive(write):
    code, out = run("closure", write("r.txt", "b c < a b\n"))
    assert out == "a a < a a\na a < a b\na b < a b\nb b < a b\nb b < b b\nb b < b c\nb c < a b\nb c < b c\nc c < a b\nc c < b c\nc c < c c\n"


def test_realize_outputs(write, tmp_path):
    path = write("fig4.txt", "x y < x z\nx x < y z\n")
    code, net = run("realize", path)
    assert code == 0
    assert net == "leaves: x y z\n{x,y} -> x\n{x,y} -> y\n{x,z} -> z\n{x,z} -> {x,y}\n"
    code, full = run("realize", path, "--output", "dag")
    assert "{x,z} -> x" in full
    dot = tmp_path / "g.dot"
    run("realize", path, "--dot", str(dot))
    assert dot.read_text().startswith("digraph G {")
    assert run("realize", path) == run("realize", path)


def test_realize_failure(write, capsys):
    code, out = run("realize", write("bad.txt", NOT_SUBSET_REAL))
    assert code == 1 and out == ""
    assert "X2 violation" in capsys.readouterr().err


def test_realize_pair(write):
    r = write("r.txt", "leaves: a b x\n")
    s = write("s.txt", "a b < x x\n")
    code, out = run("realize-pair", r, "--incomparable", s)
    assert code == 0
    g = parse_dag(out)
    assert ("_root", "x") in g.arc_labels


def test_realize_pair_condition_b(write, capsys):
    r = write("r.txt", "a b < x y\n")
    s = write("s.txt", "x y < a b\n")
    code, _ = run("realize-pair", r, "--incomparable", s)
    assert code == 1
    err = capsys.readouterr().err
    assert "condition (b)" in err and "a b < x y" in err


def test_realize_pair_rejects_self_incomparability(write, capsys):
    r = write("r.txt", "a b < x y\n")
    s = write("s.txt", "a b < b a\n")
    code, _ = run("realize-pair", r, "--incomparable", s)
    assert code == 2
    assert f"{s}:1:" in capsys.readouterr().err


def test_extract_and_verify(write):
    dag = write("g.dag", "leaves: a b c\nr -> p\np -> a\np -> b\nr -> c\n")
    code, leq = run("extract", dag)
    assert code == 0 and "a b < a c" in leq and "a a < a a" in leq
    code, strict = run("extract", dag, "--strict")
    assert "a a < a a" not in strict
    assert run("verify", dag, write("leq.txt", leq))[0] == 0
    assert run("verify", dag, write("strict.txt", strict), "--strict")[0] == 0
    code, out = run("verify", dag, write("bad.txt", "a c < a b\n"))
    assert code == 1
    assert "I1 failure: a c < a b (lca observed above)" in out
    code, out = run("verify", dag, write("refl.txt", "a b < a b\n"), "--strict")
    assert code == 1 and "I0 failure" in out


def test_verify_relation_with_fewer_leaves(write):
    dag = write("g.dag", "leaves: a b c\nr -> a\nr -> b\nr -> c\n")
    assert run("verify", dag, write("r.txt", "a a < a b\n"))[0] == 0


def test_verify_unknown_leaf_is_error(write, capsys):
    dag = write("g.dag", "r -> a\nr -> b\n")
    assert run("verify", dag, write("r.txt", "a z < a b\n"))[0] == 2


@pytest.mark.parametrize(
    "text, where",
    [("a b < c\n", ":1:"), ("a b < c d\nq\n", ":2:"), ("a b < _root c\n", ":1:")],
)
def test_parse_errors_exit_2(write, capsys, text, where, monkeypatch):
    monkeypatch.setenv("NO_COLOR", "1")
    path = write("bad.txt", text)
    code, _ = run("check", path)
    assert code == 2
    err = capsys.readouterr().err.strip()
    assert err.startswith(f"error: {path}{where}")
    assert len(err.splitlines()) == 1


def test_missing_file(capsys):
    assert run("check", "/nonexistent/x.txt")[0] == 2
    assert "/nonexistent/x.txt" in capsys.readouterr().err


def test_module_entry_point(write):
    path = write("fig1.txt", FIG1)
    proc = subprocess.run([sys.executable, "-m", "lcadag", "check", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("realizable: yes")
