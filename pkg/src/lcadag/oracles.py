"""Brute-force oracles and seeded random generators for testing.

Everything here is deliberately naive: plain Python sets, literal rule scans,
no matrices.  The oracles exist to cross-check the vectorized engine.
"""

from __future__ import annotations

import itertools
import string
from collections import deque
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .canonical import canonical_network
from .closure import is_realizable, plus_closure
from .dag import Dag
from .errors import NotRealizable
from .relation import LeafSet, Pair, Relation

PRNG_ALGORITHM = "PCG64"

Fact = tuple[Pair, Pair]


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


# --- relation oracles


def _pair(a: int, b: int) -> Pair:
    return Pair(a, b) if a <= b else Pair(b, a)


def _support(facts: set[Fact]) -> set[Pair]:
    return {p for fact in facts for p in fact}


def naive_plus_closure(r: Relation) -> Relation:
    """Literal fixpoint of the closure rules.

    R1 adds ``(p, p)`` for every pair of the support and every singleton, once.
    Then every triple is scanned for transitivity and every sextuple
    ``a, b, c, d, x, y`` for cross-consistency until a full round adds nothing.
    """
    ls = r.leaf_set
    n = len(ls)
    facts: set[Fact] = set(r)
    supp = _support(facts) | {Pair(x, x) for x in range(n)}
    facts |= {(p, p) for p in supp}
    pairs = ls.pairs

    changed = True
    while changed:
        changed = False
        for p in pairs:
            for q in pairs:
                if (p, q) not in facts:
                    continue
                for t in pairs:
                    if (q, t) in facts and (p, t) not in facts:
                        facts.add((p, t))
                        changed = True
        current_supp = _support(facts)
        for x, y, a, c in itertools.product(range(n), repeat=4):
            xy = _pair(x, y)
            if (_pair(a, c), xy) not in facts:
                continue
            for b, d in itertools.product(range(n), repeat=2):
                ab = _pair(a, b)
                if ab in current_supp and (_pair(b, d), xy) in facts and (ab, xy) not in facts:
                    facts.add((ab, xy))
                    changed = True
    return Relation.from_pairs(ls, facts)


def bfs_transitive_closure(r: Relation) -> Relation:
    succ: dict[Pair, set[Pair]] = {}
    for p, q in r:
        succ.setdefault(p, set()).add(q)
    out = set()
    for start in succ:
        seen: set[Pair] = set()
        queue = deque(succ[start])
        while queue:
            q = queue.popleft()
            if q in seen:
                continue
            seen.add(q)
            queue.extend(succ.get(q, ()))
        out.update((start, q) for q in seen)
    return Relation.from_pairs(r.leaf_set, out)


def naive_cross_consistent(r: Relation) -> bool:
    """Scan all sextuples for a violated cross-consistency requirement."""
    n = len(r.leaf_set)
    facts = set(r)
    supp = _support(facts)
    for a, b, c, d, x, y in itertools.product(range(n), repeat=6):
        xy, ab = _pair(x, y), _pair(a, b)
        if (
            ab in supp
            and (_pair(a, c), xy) in facts
            and (_pair(b, d), xy) in facts
            and (ab, xy) not in facts
        ):
            return False
    return True


def mutual_classes(closure: Relation) -> list[frozenset[Pair]]:
    """Classes of mutually related pairs by an O(n^2) scan, in representative order."""
    facts = set(closure)
    supp = sorted(_support(facts), key=closure.leaf_set.pid)
    classes: list[frozenset[Pair]] = []
    placed: set[Pair] = set()
    for p in supp:
        if p in placed:
            continue
        cls = frozenset(q for q in supp if (p, q) in facts and (q, p) in facts)
        placed |= cls
        classes.append(cls)
    return classes


# --- DAG oracles


def dfs_reachable(g: Dag, u: int) -> set[int]:
    seen = {u}
    stack = [u]
    while stack:
        v = stack.pop()
        for c in g.children[v]:
            if c not in seen:
                seen.add(c)
                stack.append(c)
    return seen


def naive_lca_set(g: Dag, leaves: list[str]) -> set[int]:
    targets = {g.index[x] for x in leaves}
    reach = {v: dfs_reachable(g, v) for v in range(len(g))}
    common = {v for v in reach if targets <= reach[v]}
    return {v for v in common if not any(w != v and w in reach[v] for w in common)}


def naive_extract(g: Dag, strict: bool = False) -> Relation:
    """The LCA order by explicit enumeration of leaf pairs."""
    ls = g.leaf_set
    reach = {v: dfs_reachable(g, v) for v in range(len(g))}
    lca: dict[Pair, int] = {}
    for p in ls.pairs:
        cand = naive_lca_set(g, list(ls.names(p)))
        if len(cand) == 1:
            lca[p] = next(iter(cand))
    facts = []
    for p, u in lca.items():
        for q, v in lca.items():
            if u in reach[v] and not (strict and u == v):
                facts.append((p, q))
    return Relation.from_pairs(ls, facts)


# --- tight witness


def gadget_labels(leaf_set: LeafSet, p: Pair) -> tuple[str, str]:
    a, b = leaf_set.names(p)
    return f"_v_{a}_{b}", f"_u_{a}_{b}"


def build_tight_witness(r: Relation) -> Dag:
    """A DAG realizing *r* whose LCA order is exactly R+.

    Starting from ``N_R``, every pair outside the closure's support gets two
    parallel parents under the root, so its LCA stops being unique.
    """
    verdict = is_realizable(r)
    if not verdict.realizable:
        raise NotRealizable(verdict)
    network = canonical_network(r)
    ls = r.leaf_set
    supp = plus_closure(r).support_plus
    (root,) = network.roots
    rho = network.labels[root]
    labels = list(network.labels)
    arcs = list(network.arc_labels)
    arcs.sort(key=lambda a: (network.index[a[0]], network.index[a[1]]))
    for p in ls.pairs:
        if p.is_singleton or p in supp:
            continue
        a, b = ls.names(p)
        for gadget in gadget_labels(ls, p):
            labels.append(gadget)
            arcs += [(rho, gadget), (gadget, a), (gadget, b)]
    return Dag(labels, arcs, ls)


# --- random generation


@dataclass(frozen=True)
class RandomSpec:
    """Seeded recipe for a random relation or DAG.

    ``max_internal`` bounds the number of non-leaf vertices in DAG mode.
    """

    leaf_count: int
    constraint_density: float
    seed: int
    mode: Literal["relation", "dag"] = "relation"
    max_internal: int = 8

    def __post_init__(self):
        if self.leaf_count < 1:
            raise ValueError("leaf_count must be at least 1")
        if not 0.0 <= self.constraint_density <= 1.0:
            raise ValueError("constraint_density must lie in [0, 1]")


def leaf_names(count: int) -> list[str]:
    if count <= len(string.ascii_lowercase):
        return list(string.ascii_lowercase[:count])
    return [f"x{i}" for i in range(count)]


def random_relation(spec: RandomSpec, rng: Optional[np.random.Generator] = None) -> Relation:
    """Each ordered pair of pairs is kept independently with the spec's density."""
    rng = rng or make_rng(spec.seed)
    ls = LeafSet(leaf_names(spec.leaf_count))
    m = rng.random((ls.n_pairs, ls.n_pairs)) < spec.constraint_density
    return Relation(ls, m)


def random_constraints(leaf_count: int, count: int, seed: int) -> Relation:
    """Exactly *count* distinct facts drawn uniformly over all ordered pair pairs."""
    rng = make_rng(seed)
    ls = LeafSet(leaf_names(leaf_count))
    total = ls.n_pairs * ls.n_pairs
    if count > total:
        raise ValueError(f"only {total} distinct facts exist over {leaf_count} leaves")
    flat = np.zeros(total, dtype=bool)
    flat[rng.choice(total, size=count, replace=False)] = True
    return Relation(ls, flat.reshape(ls.n_pairs, ls.n_pairs))


def random_dag(spec: RandomSpec, rng: Optional[np.random.Generator] = None) -> Dag:
    """Random DAG on ``leaf_count`` leaves.

    Internal vertices follow a random topological order; arcs go forward in
    that order (and to leaves) with the spec's density.  Internal vertices
    left without children receive one random leaf child.
    """
    rng = rng or make_rng(spec.seed)
    leaves = leaf_names(spec.leaf_count)
    k = int(rng.integers(0, spec.max_internal + 1))
    inner = [f"v{i}" for i in range(k)]
    order = list(rng.permutation(k))
    arcs = []
    for pos, i in enumerate(order):
        for j in order[pos + 1:]:
            if rng.random() < spec.constraint_density:
                arcs.append((inner[i], inner[j]))
        for leaf in leaves:
            if rng.random() < spec.constraint_density:
                arcs.append((inner[i], leaf))
    has_child = {u for u, _ in arcs}
    for i in range(k):
        if inner[i] not in has_child:
            arcs.append((inner[i], leaves[int(rng.integers(len(leaves)))]))
    return Dag(leaves + inner, arcs, LeafSet(leaves))
