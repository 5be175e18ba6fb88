"""Canonical DAG and canonical network of a relation.

The vertices of the canonical DAG are the classes of mutually R+-related
pairs; class ``[p]`` lies below ``[q]`` whenever ``p R+ q``.  Singleton classes
``[xx]`` become the leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .closure import ClosureResult, RealizabilityVerdict, _verdict, check_x1, plus_closure
from .dag import Dag, transitive_reduction
from .errors import NotRealizable, X1Violated
from .relation import ROOT_LABEL, LeafSet, Pair, Relation


@dataclass(frozen=True)
class ClassPartition:
    """Partition of supp+ into classes of mutually related pairs.

    Class ids are ordered by representative (the member with the smallest
    pair id, i.e. the lexicographically least pair).
    """

    leaf_set: LeafSet
    class_of: dict[Pair, int]
    members: tuple[tuple[Pair, ...], ...]

    @property
    def representative(self) -> tuple[Pair, ...]:
        return tuple(m[0] for m in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def label(self, cid: int) -> str:
        """Vertex label of a class: the leaf name for ``[xx]``, else ``{a,b}``."""
        rep = self.members[cid][0]
        a, b = self.leaf_set.names(rep)
        if rep.is_singleton:
            return a
        return "{" + a + "," + b + "}"

    def label_of(self, p: Pair) -> str:
        return self.label(self.class_of[p])

    def tooltip(self, cid: int) -> str:
        """All members, written ``ab`` for one-character leaves and ``{a,b}`` otherwise."""
        out = []
        for p in self.members[cid]:
            a, b = self.leaf_set.names(p)
            out.append(a + b if len(a) == len(b) == 1 else "{" + a + "," + b + "}")
        return " ".join(out)


@dataclass(frozen=True)
class ClassOrder:
    """``leq[i, j]`` iff class ``i`` lies below or equals class ``j``."""

    leq: np.ndarray

    def __call__(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])


def equivalence_classes(closure: ClosureResult) -> ClassPartition:
    ls = closure.leaf_set
    m = closure.closure.matrix
    mutual = m & m.T
    supp = sorted(ls.pid(p) for p in closure.support_plus)
    class_of: dict[Pair, int] = {}
    members: list[tuple[Pair, ...]] = []
    for i in supp:
        p = ls.pairs[i]
        if p in class_of:
            continue
        cid = len(members)
        group = tuple(ls.pairs[j] for j in np.flatnonzero(mutual[i]))
        for q in group:
            class_of[q] = cid
        members.append(group)
    return ClassPartition(ls, class_of, tuple(members))


def class_order(partition: ClassPartition, closure: ClosureResult) -> ClassOrder:
    ls = partition.leaf_set
    reps = np.array([ls.pid(r) for r in partition.representative], dtype=np.intp)
    leq = np.array(closure.closure.matrix[np.ix_(reps, reps)], dtype=bool)
    leq.flags.writeable = False
    return ClassOrder(leq)


@dataclass(frozen=True)
class CanonicalParts:
    closure: ClosureResult
    partition: ClassPartition
    order: ClassOrder


def _parts(r: Relation) -> CanonicalParts:
    cl = plus_closure(r)
    partition = equivalence_classes(cl)
    return CanonicalParts(cl, partition, class_order(partition, cl))


def _dag_from_parts(parts: CanonicalParts) -> Dag:
    partition, order = parts.partition, parts.order
    ls = partition.leaf_set
    leaves = [cid for cid, rep in enumerate(partition.representative) if rep.is_singleton]
    inner = [cid for cid, rep in enumerate(partition.representative) if not rep.is_singleton]
    leaves.sort(key=lambda cid: partition.representative[cid].lo)
    ordered = leaves + inner
    labels = [partition.label(cid) for cid in ordered]
    arcs = [
        (partition.label(q), partition.label(p))
        for q in ordered
        for p in ordered
        if p != q and order.leq[p, q]
    ]
    return Dag(labels, arcs, ls)


def canonical_dag(r: Relation, parts: Optional[CanonicalParts] = None) -> Dag:
    """The canonical DAG G_R; requires condition X1."""
    parts = parts or _parts(r)
    x1 = check_x1(parts.closure)
    if x1:
        raise X1Violated(RealizabilityVerdict(False, x1, [], False))
    return _dag_from_parts(parts)


def add_root(g: Dag) -> Dag:
    """Hang all roots of *g* below a fresh ``_root`` vertex (no-op for networks)."""
    if g.is_network:
        return g
    arcs = list(g.arc_labels) + [(ROOT_LABEL, g.labels[r]) for r in g.roots]
    arcs.sort(key=lambda a: (g.index.get(a[0], len(g)), g.index[a[1]]))
    return Dag(list(g.labels) + [ROOT_LABEL], arcs, g.leaf_set)


def canonical_network(r: Relation) -> Dag:
    """The canonical network N_R: the shortcut-free canonical DAG, rooted if needed."""
    res = algorithm_real(r)
    if not res.realizable:
        raise NotRealizable(res.verdict)
    return res.network


@dataclass(frozen=True)
class RealizationResult:
    verdict: RealizabilityVerdict
    closure: ClosureResult
    partition: Optional[ClassPartition] = None
    dag: Optional[Dag] = None
    reduced: Optional[Dag] = None
    network: Optional[Dag] = None

    @property
    def realizable(self) -> bool:
        return self.verdict.realizable


def algorithm_real(r: Relation) -> RealizationResult:
    """Decide realizability and, on success, build G_R, its reduction and N_R."""
    verdict, cl = _verdict(r)
    if not verdict.realizable:
        return RealizationResult(verdict, cl)
    partition = equivalence_classes(cl)
    parts = CanonicalParts(cl, partition, class_order(partition, cl))
    g = _dag_from_parts(parts)
    reduced = transitive_reduction(g)
    return RealizationResult(verdict, cl, partition, g, reduced, add_root(reduced))
