"""DAGs on a leaf set: reachability, LCAs, shortcuts, clusters and extraction.

Vertices are addressed by dense integer ids (their position in
``Dag.labels``); most functions also accept a vertex label.  Arcs point from
parent to child and the sinks of a DAG are exactly its leaves.
"""

from __future__ import annotations

import graphlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import CycleError, InvalidDag, LeafSetMismatch, UnknownLeaf, UnknownVertex
from .relation import LeafSet, Pair, Relation, support_plus_mask, transitive_closure

VertexId = int
Vertex = Union[int, str]


class Dag:
    """Immutable DAG whose sinks are labeled by the leaves of a :class:`LeafSet`.

    Parameters
    ----------
    vertices:
        Distinct vertex labels.  The order fixes the vertex ids.
    arcs:
        ``(parent, child)`` label pairs.
    leaf_set:
        Optional leaf set; when given, the sinks must carry exactly these labels.
    """

    def __init__(
        self,
        vertices: Sequence[str],
        arcs: Iterable[tuple[str, str]] = (),
        leaf_set: Optional[LeafSet] = None,
    ):
        labels = tuple(vertices)
        if not labels:
            raise InvalidDag("a DAG needs at least one vertex")
        index = {label: i for i, label in enumerate(labels)}
        if len(index) != len(labels):
            raise InvalidDag("duplicate vertex labels")
        children: list[list[int]] = [[] for _ in labels]
        parents: list[list[int]] = [[] for _ in labels]
        seen: set[tuple[int, int]] = set()
        for u, v in arcs:
            try:
                iu, iv = index[u], index[v]
            except KeyError as exc:
                raise UnknownVertex(exc.args[0]) from None
            if iu == iv:
                raise CycleError([u, v])
            if (iu, iv) in seen:
                raise InvalidDag(f"duplicate arc {u} -> {v}")
            seen.add((iu, iv))
            children[iu].append(iv)
            parents[iv].append(iu)

        sinks = {labels[i] for i, ch in enumerate(children) if not ch}
        if leaf_set is None:
            leaf_set = LeafSet(sinks)
        elif set(leaf_set.labels) != sinks:
            raise InvalidDag(
                f"sinks {sorted(sinks)} do not coincide with leaves {list(leaf_set.labels)}"
            )

        self.labels: tuple[str, ...] = labels
        self.index: dict[str, int] = index
        self.leaf_set: LeafSet = leaf_set
        self.children: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(c)) for c in children)
        self.parents: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(p)) for p in parents)
        self.leaf_vertex = np.array([index[x] for x in leaf_set.labels], dtype=np.intp)
        self._topo = self._toposort()
        self._desc = self._reachability()

    def _toposort(self) -> list[int]:
        sorter = graphlib.TopologicalSorter({i: ch for i, ch in enumerate(self.children)})
        try:
            # children come out before parents
            return list(sorter.static_order())
        except graphlib.CycleError as exc:
            cycle = [self.labels[i] for i in exc.args[1]]
            raise CycleError(cycle) from None

    def _reachability(self) -> np.ndarray:
        n = len(self.labels)
        desc = np.zeros((n, n), dtype=bool)
        for u in self._topo:
            desc[u, u] = True
            for c in self.children[u]:
                desc[u] |= desc[c]
        desc.flags.writeable = False
        return desc

    # --- basic accessors

    def __len__(self) -> int:
        return len(self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dag):
            return NotImplemented
        return set(self.labels) == set(other.labels) and self.arc_labels == other.arc_labels

    def __hash__(self) -> int:
        return hash((frozenset(self.labels), frozenset(self.arc_labels)))

    def __repr__(self) -> str:
        return f"Dag({len(self.labels)} vertices, {len(self.arcs)} arcs)"

    @cached_property
    def arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u, ch in enumerate(self.children) for v in ch)

    @cached_property
    def arc_labels(self) -> frozenset[tuple[str, str]]:
        return frozenset((self.labels[u], self.labels[v]) for u, v in self.arcs)

    @property
    def descendants(self) -> np.ndarray:
        """``desc[u, v]`` is true iff ``v`` is a (non-strict) descendant of ``u``."""
        return self._desc

    @cached_property
    def roots(self) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.parents) if not p)

    @property
    def is_network(self) -> bool:
        return len(self.roots) == 1

    def is_leaf(self, v: Vertex) -> bool:
        return not self.children[self.vertex_id(v)]

    def vertex_id(self, v: Vertex) -> int:
        if isinstance(v, str):
            try:
                return self.index[v]
            except KeyError:
                raise UnknownVertex(v) from None
        v = int(v)
        if not 0 <= v < len(self.labels):
            raise UnknownVertex(v)
        return v

    def label(self, v: Vertex) -> str:
        return self.labels[self.vertex_id(v)]

    @property
    def pair_lca(self) -> np.ndarray:
        """Vertex id of ``lca(p)`` for every pair id, ``-1`` where undefined."""
        return self._lca_info[0]

    @property
    def pair_lca_count(self) -> np.ndarray:
        """``|LCA(p)|`` for every pair id."""
        return self._lca_info[1]

    @cached_property
    def _lca_info(self) -> tuple[np.ndarray, np.ndarray]:
        ls = self.leaf_set
        desc = self._desc
        proper = desc & ~np.eye(len(self.labels), dtype=bool)
        lo = self.leaf_vertex[ls.pair_lo]
        hi = self.leaf_vertex[ls.pair_hi]
        # common[v, p]: v is a common ancestor of both leaves of p
        common = desc[:, lo] & desc[:, hi]
        has_lower = (proper.astype(np.float32) @ common.astype(np.float32)) > 0
        minimal = common & ~has_lower
        count = minimal.sum(axis=0)
        lca = np.where(count == 1, minimal.argmax(axis=0), -1).astype(np.intp)
        return lca, count


def is_ancestor(g: Dag, u: Vertex, v: Vertex) -> bool:
    """True iff ``v`` is a descendant of ``u`` (every vertex is its own ancestor)."""
    return bool(g.descendants[g.vertex_id(u), g.vertex_id(v)])


def lca_set(g: Dag, leaves: Iterable[str]) -> set[int]:
    """All minimal common ancestors of a non-empty set of leaves."""
    leaves = list(leaves)
    if not leaves:
        raise ValueError("need at least one leaf")
    cols = []
    for x in leaves:
        if x not in g.leaf_set:
            raise UnknownLeaf(x)
        cols.append(g.index[x])
    desc = g.descendants
    common = np.logical_and.reduce(desc[:, cols], axis=1)
    cand = np.flatnonzero(common)
    return {
        int(v) for v in cand if not any(desc[v, w] for w in cand if w != v)
    }


def lca_unique(g: Dag, p: Pair) -> Optional[int]:
    """The vertex ``lca(p)`` if the LCA set is a singleton, else ``None``."""
    v = int(g.pair_lca[g.leaf_set.pid(p)])
    return None if v < 0 else v


def transitive_reduction(g: Dag) -> Dag:
    """Remove every arc ``u -> w`` that is bypassed by a longer ``u ~> w`` path."""
    n = len(g)
    adj = np.zeros((n, n), dtype=bool)
    for u, v in g.arcs:
        adj[u, v] = True
    proper = g.descendants & ~np.eye(n, dtype=bool)
    # indirect[u, w]: w is a proper descendant of some child of u
    indirect = (adj.astype(np.float32) @ proper.astype(np.float32)) > 0
    keep = adj & ~indirect
    arcs = [(g.labels[u], g.labels[v]) for u, v in np.argwhere(keep)]
    return Dag(g.labels, arcs, g.leaf_set)


def shortcuts(g: Dag) -> list[tuple[int, int]]:
    """Arcs of *g* that a path of length at least two bypasses."""
    reduced = transitive_reduction(g)
    keep = set(reduced.arcs)
    return [a for a in g.arcs if a not in keep]


def clusters(g: Dag) -> tuple[dict[int, frozenset[str]], set[frozenset[str]]]:
    """Leaf descendants of every vertex, and the resulting cluster system."""
    below = g.descendants[:, g.leaf_vertex]
    names = g.leaf_set.labels
    cmap = {
        v: frozenset(names[i] for i in np.flatnonzero(below[v])) for v in range(len(g))
    }
    return cmap, set(cmap.values())


@dataclass(frozen=True)
class HasseDiagram:
    clusters: tuple[frozenset[str], ...]
    arcs: frozenset[tuple[frozenset[str], frozenset[str]]]


def hasse(system: Iterable[Iterable[str]]) -> HasseDiagram:
    """Cover digraph of a set system: ``A -> B`` iff ``B`` is a maximal proper subset of ``A``."""
    sets = sorted({frozenset(c) for c in system}, key=lambda s: (len(s), sorted(s)))
    arcs = set()
    for a in sets:
        below = [b for b in sets if b < a]
        for b in below:
            if not any(b < c for c in below):
                arcs.add((a, b))
    return HasseDiagram(tuple(sets), frozenset(arcs))


def is_regular(g: Dag) -> bool:
    """True iff ``v -> C(v)`` is an isomorphism from *g* onto the Hasse diagram of its clusters."""
    cmap, system = clusters(g)
    if len(system) != len(g):
        return False
    diagram = hasse(system)
    mapped = {(cmap[u], cmap[v]) for u, v in g.arcs}
    return mapped == set(diagram.arcs)


def is_phylogenetic(g: Dag) -> bool:
    return not any(
        len(ch) == 1 and len(par) <= 1 for ch, par in zip(g.children, g.parents)
    )


def is_two_lca_relevant(g: Dag) -> bool:
    hit = np.zeros(len(g), dtype=bool)
    lca = g.pair_lca
    hit[lca[lca >= 0]] = True
    return bool(hit.all())


def _lca_order(g: Dag) -> tuple[np.ndarray, np.ndarray]:
    lca = g.pair_lca
    defined = lca >= 0
    safe = np.where(defined, lca, 0)
    # leq[p, q]: lca(p) is a descendant of lca(q)
    leq = g.descendants[np.ix_(safe, safe)].T & defined[:, None] & defined[None, :]
    return leq, safe


def extract_leq(g: Dag) -> Relation:
    """Pairs ``(ab, xy)`` with both LCAs defined and ``lca(ab)`` below or equal to ``lca(xy)``."""
    leq, _ = _lca_order(g)
    return Relation(g.leaf_set, leq)


def extract_strict(g: Dag) -> Relation:
    """Like :func:`extract_leq`, but ``lca(ab)`` strictly below ``lca(xy)``."""
    leq, safe = _lca_order(g)
    same = safe[:, None] == safe[None, :]
    return Relation(g.leaf_set, leq & ~same)


LcaFailure = tuple[tuple[Pair, Pair], str]


@dataclass(frozen=True)
class RealizationReport:
    ok: bool
    undefined_lcas: list[Pair] = field(default_factory=list)
    i0_failures: list[LcaFailure] = field(default_factory=list)
    i1_failures: list[LcaFailure] = field(default_factory=list)
    i2_failures: list[LcaFailure] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _observed(g: Dag, u: int, v: int) -> str:
    if u < 0 or v < 0:
        return "undefined"
    if u == v:
        return "equal"
    desc = g.descendants
    if desc[v, u]:
        return "below"
    if desc[u, v]:
        return "above"
    return "incomparable"


def _check_leaves(g: Dag, r: Relation) -> None:
    if g.leaf_set != r.leaf_set:
        raise LeafSetMismatch(f"DAG leaves {list(g.leaf_set)} != relation leaves {list(r.leaf_set)}")


def verify_realizes(g: Dag, r: Relation) -> RealizationReport:
    """Check that *g* realizes *r*.

    Every pair of supp+ must have a unique LCA; facts of tc(R) without their
    reverse need strict descent (I1) and symmetric facts need equal LCAs (I2).
    Observed relations are reported as ``below``, ``equal``, ``above``,
    ``incomparable`` or ``undefined`` (lca of the left pair relative to the right).
    """
    _check_leaves(g, r)
    ls = r.leaf_set
    lca = g.pair_lca
    undefined = [ls.pairs[i] for i in np.flatnonzero(support_plus_mask(r)) if lca[i] < 0]
    t = transitive_closure(r).matrix
    leq, safe = _lca_order(g)
    same = (safe[:, None] == safe[None, :]) & leq
    strict = leq & ~same
    i1_mask = t & ~t.T & ~strict
    i2_mask = t & t.T & ~same
    i1 = [((ls.pairs[i], ls.pairs[j]), _observed(g, lca[i], lca[j])) for i, j in np.argwhere(i1_mask)]
    i2 = [((ls.pairs[i], ls.pairs[j]), _observed(g, lca[i], lca[j])) for i, j in np.argwhere(i2_mask)]
    return RealizationReport(
        ok=not (undefined or i1 or i2),
        undefined_lcas=undefined,
        i1_failures=i1,
        i2_failures=i2,
    )


def verify_strictly_realizes(g: Dag, r: Relation) -> RealizationReport:
    """Check that every fact of *r* is a strict LCA descent in *g* (``R`` inside the strict extraction)."""
    _check_leaves(g, r)
    ls = r.leaf_set
    lca = g.pair_lca
    undefined = [ls.pairs[i] for i in np.flatnonzero(support_plus_mask(r)) if lca[i] < 0]
    bad = r.matrix & ~extract_strict(g).matrix
    i0 = [((ls.pairs[i], ls.pairs[j]), _observed(g, lca[i], lca[j])) for i, j in np.argwhere(bad)]
    return RealizationReport(ok=not (undefined or i0), undefined_lcas=undefined, i0_failures=i0)


def incomparable(g: Dag, p: Pair, q: Pair) -> bool:
    """True iff both LCAs are defined and neither lies below the other."""
    u, v = lca_unique(g, p), lca_unique(g, q)
    if u is None or v is None:
        return False
    desc = g.descendants
    return not desc[u, v] and not desc[v, u]
