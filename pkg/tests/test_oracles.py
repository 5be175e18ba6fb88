import pytest
from hypothesis import given
from hypothesis import strategies as st

from lcadag import (
    LeafSet,
    NotRealizable,
    Relation,
    extract_leq,
    is_realizable,
    plus_closure,
    verify_realizes,
)
from lcadag.oracles import (
    RandomSpec,
    build_tight_witness,
    naive_plus_closure,
    random_constraints,
    random_dag,
    random_relation,
)
from strategies import relations


def test_naive_closure_on_merge_example():
    r = Relation.parse("xx<ab, yy<ab, aa<xy, bb<xy")
    cl = naive_plus_closure(r)
    assert ("xy", "ab") in cl and ("ab", "xy") in cl
    assert cl == plus_closure(r).closure


def test_naive_closure_of_empty_relation():
    ls = LeafSet("abc")
    assert naive_plus_closure(Relation(ls)) == Relation.from_pairs(ls, [(x * 2, x * 2) for x in "abc"])


def test_tight_witness_with_nothing_supported():
    ls = LeafSet("ab")
    w = build_tight_witness(Relation(ls))
    assert {"_v_a_b", "_u_a_b"} <= set(w.labels)
    assert extract_leq(w) == Relation.from_pairs(ls, [("aa", "aa"), ("bb", "bb")])


def test_tight_witness_with_full_support_is_the_network():
    from lcadag import canonical_network

    r = Relation.parse("ab<bc, ac<bc")
    assert build_tight_witness(r) == canonical_network(r)


def test_tight_witness_needs_realizable_input():
    with pytest.raises(NotRealizable):
        build_tight_witness(Relation.parse("ab<xx"))


def test_random_relation_extremes_and_determinism():
    assert len(random_relation(RandomSpec(3, 0.0, 1))) == 0
    assert len(random_relation(RandomSpec(3, 1.0, 1))) == 36
    assert random_relation(RandomSpec(4, 0.2, 7)) == random_relation(RandomSpec(4, 0.2, 7))
    assert random_relation(RandomSpec(4, 0.2, 7)) != random_relation(RandomSpec(4, 0.2, 8))


def test_random_constraints_count():
    r = random_constraints(25, 2000, 3)
    assert len(r) == 2000 and len(r.leaf_set) == 25


def test_random_spec_validation():
    with pytest.raises(ValueError):
        RandomSpec(0, 0.1, 1)
    with pytest.raises(ValueError):
        RandomSpec(2, 1.5, 1)


def test_random_dag_without_internal_vertices():
    g = random_dag(RandomSpec(4, 0.5, 1, "dag", max_internal=0))
    assert len(g) == 4 and not g.arcs


@given(st.integers(1, 6), st.sampled_from([0.1, 0.3, 0.6]), st.integers(0, 2**63 - 1))
def test_random_dag_is_deterministic_and_valid(n, density, seed):
    spec = RandomSpec(n, density, seed, "dag")
    g = random_dag(spec)
    assert g == random_dag(spec)
    assert set(g.leaf_set.labels) == {g.labels[v] for v in range(len(g)) if not g.children[v]}
    rel = extract_leq(g)
    assert plus_closure(rel).closure == rel


@given(relations(max_leaves=4, max_facts=5))
def test_tight_witness_law(r):
    if not is_realizable(r).realizable:
        return
    w = build_tight_witness(r)
    assert verify_realizes(w, r).ok
    assert extract_leq(w) == plus_closure(r).closure
