"""Order constraints together with pairwise incomparability constraints.

A pair ``(R, S)`` asks for a DAG realizing ``R`` in which, for each
``(p, q)`` in ``S``, both LCAs exist and neither lies below the other.
Pairs mentioned only by ``S`` are pulled into the support of ``R`` by
adding ``(aa, ab)`` and ``(bb, ab)``; the result is written ``R_S``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .canonical import RealizationResult, algorithm_real
from .dag import Dag, incomparable, verify_realizes
from .errors import InvalidConstraint, LeafSetMismatch
from .relation import Pair, Relation, support_mask, support_plus_mask


@dataclass(frozen=True)
class ConstraintPair:
    order_constraints: Relation
    incomparability_constraints: Relation

    def __post_init__(self):
        if self.order_constraints.leaf_set != self.incomparability_constraints.leaf_set:
            raise LeafSetMismatch("R and S must share a leaf set")

    @property
    def leaf_set(self):
        return self.order_constraints.leaf_set


def augment(r: Relation, s: Relation) -> Relation:
    """``R`` plus ``(aa, ab), (bb, ab)`` for every ``ab`` in supp(S) outside supp+(R)."""
    if r.leaf_set != s.leaf_set:
        raise LeafSetMismatch(f"{r.leaf_set!r} != {s.leaf_set!r}")
    ls = r.leaf_set
    new = support_mask(s) & ~support_plus_mask(r)
    m = np.array(r.matrix, copy=True)
    for pid in np.flatnonzero(new):
        p = ls.pairs[pid]
        m[ls.singleton_pids[p.lo], pid] = True
        m[ls.singleton_pids[p.hi], pid] = True
    return Relation(ls, m)


def symmetrized(s: Relation) -> Relation:
    return Relation(s.leaf_set, s.matrix | s.matrix.T)


def validate_incomparability(s: Relation) -> None:
    """Reject ``(p, p)`` entries: an LCA is never incomparable with itself."""
    diag = np.flatnonzero(np.diagonal(s.matrix))
    if len(diag):
        p = s.leaf_set.pairs[diag[0]]
        raise InvalidConstraint(
            f"self-incomparability ({s.leaf_set.pair_str(p)}, {s.leaf_set.pair_str(p)}) can never hold"
        )


@dataclass(frozen=True)
class PairVerdict:
    """Outcome of :func:`realize_pair`.

    ``failed_condition`` is ``"a"`` when ``R_S`` is not realizable and ``"b"``
    when some entry of ``S`` is comparable in ``R_S+``; ``comparable`` then lists
    the offending ``(p, q)`` with ``p R_S+ q``.
    """

    realizable: bool
    augmented: Relation
    realization: RealizationResult
    failed_condition: Optional[str] = None
    comparable: list[tuple[Pair, Pair]] = field(default_factory=list)
    network: Optional[Dag] = None

    def __bool__(self) -> bool:
        return self.realizable


def realize_pair(r: Relation, s: Relation) -> PairVerdict:
    """Decide whether ``(R, S)`` is realizable and build ``N_{R_S}`` if so."""
    if r.leaf_set != s.leaf_set:
        raise LeafSetMismatch(f"{r.leaf_set!r} != {s.leaf_set!r}")
    validate_incomparability(s)
    sym = symmetrized(s).matrix
    r_s = augment(r, s)
    result = algorithm_real(r_s)
    if not result.realizable:
        return PairVerdict(False, r_s, result, failed_condition="a")

    plus = result.closure.closure.matrix
    bad = sym & (plus | plus.T)
    if bad.any():
        pairs = r.leaf_set.pairs
        # report each offending entry once, in the direction it lies in R_S+
        seen = set()
        comparable = []
        for i, j in np.argwhere(bad):
            key = (min(i, j), max(i, j))
            if key in seen:
                continue
            seen.add(key)
            if not plus[i, j]:
                i, j = j, i
            comparable.append((pairs[i], pairs[j]))
        return PairVerdict(False, r_s, result, failed_condition="b", comparable=comparable)

    network = result.network
    assert verify_pair(network, r, s), "N_{R_S} does not realize (R, S)"
    return PairVerdict(True, r_s, result, network=network)


def verify_pair(g: Dag, r: Relation, s: Relation) -> bool:
    """Direct check: *g* realizes *r* and every entry of *s* has incomparable LCAs."""
    if not verify_realizes(g, r).ok:
        return False
    pairs = s.leaf_set.pairs
    return all(incomparable(g, pairs[i], pairs[j]) for i, j in np.argwhere(s.matrix))
