import pytest
from hypothesis import given

from lcadag import Dag, ParseError, Relation, algorithm_real
from lcadag.io import parse_constraints, parse_dag, serialize_constraints, serialize_dag, to_dot
from strategies import dags, relations


def test_parse_constraint_file():
    text = "# Aho-style constraints\nleaves: z\ni j < i k\nj k < j l  # trailing comment\n\nj l < i k\n"
    cf = parse_constraints(text, "f.txt")
    r = cf.relation
    assert list(r.leaf_set) == ["i", "j", "k", "l", "z"]
    assert ("ij", "ik") in r and len(r) == 3
    assert cf.lines[("j", "k", "j", "l")] == 4


def test_multi_character_leaf_names():
    r = parse_constraints("human chimp < human gorilla\n").relation
    assert list(r.leaf_set) == ["chimp", "gorilla", "human"]
    assert serialize_constraints(r) == "chimp human < gorilla human\n"


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("a b < c d\na b c < d e\n", 2),
        ("a b < c\n", 1),
        ("a b c d\n", 1),
        ("a b < c d < e f\n", 1),
        ("leaves: _root\n", 1),
        ("a _x < c d\n", 1),
        ("", 0),
        ("# only a comment\n", 0),
    ],
)
def test_constraint_parse_errors(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_constraints(text, "bad.txt")
    assert exc.value.lineno == lineno
    assert str(exc.value).startswith("bad.txt")


def test_reflexive_incomparability_rejected_with_line():
    with pytest.raises(ParseError, match="bad.txt:2"):
        parse_constraints("a b < c d\nb a < a b\n", "bad.txt", reject_reflexive=True)


def test_serialize_header_only_when_needed():
    r = Relation.parse("ab<bc")
    assert serialize_constraints(r) == "a b < b c\n"
    r = Relation.parse("ab<bc", leaves="d")
    assert serialize_constraints(r) == "leaves: a b c d\na b < b c\n"


def test_parse_dag_file():
    g = parse_dag("# tree\nleaves: a b c\nr -> a\nr -> b\n r->c\n")
    assert g.arc_labels == {("r", "a"), ("r", "b"), ("r", "c")}


def test_dag_isolated_leaves_need_header():
    g = parse_dag("leaves: a b c\nr -> a\nr -> b\n")
    assert list(g.leaf_set) == ["a", "b", "c"]


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("r -> a\nr -> a\n", 2),
        ("r - a\n", 1),
        ("r -> a b\n", 1),
        ("u -> u\n", 1),
        ("leaves: a\nr -> a\nr -> b\n", 1),
        ("u -> v\nv -> u\n", 0),
        ("", 0),
    ],
)
def test_dag_parse_errors(text, lineno):
    with pytest.raises(ParseError) as exc:
        parse_dag(text, "g.dag")
    assert exc.value.lineno == lineno


def test_dot_output_shapes():
    res = algorithm_real(Relation.parse("xy<yz, yz<xz, xz<xy, ab<bc"))
    tips = {res.partition.label(c): res.partition.tooltip(c) for c in range(len(res.partition))}
    dot = to_dot(res.network, tips)
    assert dot.startswith("digraph G {\n") and dot.endswith("}\n")
    assert '"a" [shape=box, label="a"];' in dot
    assert '"{x,y}" [shape=ellipse, label="{x,y}", tooltip="xy xz yz"];' in dot
    assert '"_root" [shape=point];' in dot
    assert '"_root" -> "{b,c}";' in dot


@given(relations())
def test_constraint_roundtrip(r):
    text = serialize_constraints(r)
    assert parse_constraints(text).relation == r
    assert serialize_constraints(parse_constraints(text).relation) == text


@given(dags())
def test_dag_roundtrip(g):
    text = serialize_dag(g)
    h = parse_dag(text)
    assert h == g and h.leaf_set == g.leaf_set
    assert serialize_dag(Dag(h.labels, h.arc_labels, h.leaf_set)) == serialize_dag(h)
