"""The +-closure of a relation and the realizability conditions X1/X2."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotRealizable
from .relation import (
    Pair,
    Relation,
    cross_required,
    support_mask,
    support_plus_mask,
    transitive_closure,
)

Violation = tuple[Pair, Pair]


@dataclass(frozen=True)
class ClosureResult:
    closure: Relation
    support_plus: frozenset[Pair]
    rule_applications: dict[str, int] = field(default_factory=dict)

    @property
    def leaf_set(self):
        return self.closure.leaf_set


@dataclass(frozen=True)
class RealizabilityVerdict:
    realizable: bool
    x1_violations: list[Violation]
    x2_violations: list[Violation]
    strict: bool
    asymmetry_witness: Optional[Violation] = None

    def __bool__(self) -> bool:
        return self.realizable


def _add_transitive(m: np.ndarray) -> int:
    """Close *m* under transitivity in place; return the number of new facts."""
    before = int(np.count_nonzero(m))
    for k in range(m.shape[0]):
        col = m[:, k]
        if col.any():
            m[col] |= m[k]
    return int(np.count_nonzero(m)) - before


def plus_closure(r: Relation) -> ClosureResult:
    """Least supp+-reflexive, transitive, cross-consistent relation containing *r*.

    Reflexivity is applied once; afterwards transitivity and cross-consistency
    alternate until neither adds a fact.  Each pass of either rule is applied to
    saturation over the whole matrix, so the number of passes stays small.
    """
    ls = r.leaf_set
    m = np.array(r.matrix, dtype=bool, copy=True)
    supp = support_plus_mask(r)
    idx = np.flatnonzero(supp)
    r1 = int(np.count_nonzero(~m[idx, idx]))
    m[idx, idx] = True
    counts = {"R1": r1, "R2": 0, "R3": 0}

    while True:
        counts["R2"] += _add_transitive(m)
        required = cross_required(m, supp, ls)
        new = required & ~m
        n_new = int(np.count_nonzero(new))
        if not n_new:
            break
        m |= new
        counts["R3"] += n_new

    closure = Relation(ls, m)
    assert np.array_equal(support_mask(closure), supp), "closure rules enlarged the support"
    return ClosureResult(
        closure=closure,
        support_plus=frozenset(ls.pairs[i] for i in idx),
        rule_applications=counts,
    )


def _as_violations(r: Relation, mask: np.ndarray) -> list[Violation]:
    pairs = r.leaf_set.pairs
    return [(pairs[i], pairs[j]) for i, j in np.argwhere(mask)]


def _x1_mask(closure: Relation) -> np.ndarray:
    ls = closure.leaf_set
    mask = np.zeros_like(closure.matrix)
    cols = ls.singleton_pids
    mask[:, cols] = closure.matrix[:, cols]
    mask[cols, cols] = False
    return mask


def check_x1(closure: ClosureResult) -> list[Violation]:
    """All ``(ab, xx)`` in R+ with ``ab != xx``, sorted by pair id."""
    return _as_violations(closure.closure, _x1_mask(closure.closure))


def check_x2(r: Relation, closure: ClosureResult) -> list[Violation]:
    """All ``(ab, xy)`` strictly ordered by tc(R) whose reverse lies in R+."""
    t = transitive_closure(r).matrix
    mask = t & ~t.T & closure.closure.matrix.T
    return _as_violations(r, mask)


def _verdict(r: Relation) -> tuple[RealizabilityVerdict, ClosureResult]:
    cl = plus_closure(r)
    x1 = check_x1(cl)
    x2 = check_x2(r, cl)
    realizable = not x1 and not x2
    t = transitive_closure(r).matrix
    sym = np.argwhere(t & t.T)
    witness = None
    if len(sym):
        i, j = sym[0]
        witness = (r.leaf_set.pairs[i], r.leaf_set.pairs[j])
    verdict = RealizabilityVerdict(
        realizable=realizable,
        x1_violations=x1,
        x2_violations=x2,
        strict=realizable and witness is None,
        asymmetry_witness=witness,
    )
    return verdict, cl


def is_realizable(r: Relation) -> RealizabilityVerdict:
    return _verdict(r)[0]


def is_strictly_realizable(r: Relation) -> RealizabilityVerdict:
    """Same verdict as :func:`is_realizable`; ``strict`` also needs tc(R) asymmetric."""
    return _verdict(r)[0]


def classical_closure(r: Relation) -> Relation:
    """Constraints holding in every DAG that realizes *r*; equal to R+."""
    verdict, cl = _verdict(r)
    if not verdict.realizable:
        raise NotRealizable(verdict)
    return cl.closure
