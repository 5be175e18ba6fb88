"""Leaf sets, unordered leaf pairs and binary relations on pairs.

A relation over a leaf set ``X`` lives on the set of all 1- and 2-element
subsets of ``X``.  Pairs are numbered densely (``pid``) so that a relation is
just a square boolean matrix indexed by pair ids.
"""

from __future__ import annotations

import re
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import InvalidLeafName, LeafSetMismatch, UnknownLeaf

ROOT_LABEL = "_root"

_FORBIDDEN = re.compile(r"[\s<#:{},]")


def check_leaf_name(name: str) -> None:
    if not isinstance(name, str) or not name:
        raise InvalidLeafName(f"leaf name must be a non-empty string, got {name!r}")
    if name == ROOT_LABEL:
        raise InvalidLeafName(f"{ROOT_LABEL!r} is reserved")
    if name.startswith("_"):
        raise InvalidLeafName(f"leaf names may not start with '_': {name!r}")
    if _FORBIDDEN.search(name):
        raise InvalidLeafName(f"leaf name {name!r} contains whitespace or one of < # : {{ }} ,")


class Pair(NamedTuple):
    """Unordered pair of leaf ids; ``lo == hi`` encodes a singleton."""

    lo: int
    hi: int

    @property
    def is_singleton(self) -> bool:
        return self.lo == self.hi


class LeafSet:
    """Finite non-empty set of leaf names with dense, lexicographic ids."""

    def __init__(self, names: Iterable[str]):
        names = set(names)
        if not names:
            raise InvalidLeafName("leaf set must be non-empty")
        for name in names:
            check_leaf_name(name)
        self.labels: tuple[str, ...] = tuple(sorted(names))
        self.index: dict[str, int] = {name: i for i, name in enumerate(self.labels)}
        n = len(self.labels)
        self.pairs: tuple[Pair, ...] = tuple(Pair(a, b) for a in range(n) for b in range(a, n))
        self.pair_lo = np.fromiter((p.lo for p in self.pairs), dtype=np.intp, count=len(self.pairs))
        self.pair_hi = np.fromiter((p.hi for p in self.pairs), dtype=np.intp, count=len(self.pairs))
        # pid of the singleton pair xx for every leaf x
        self.singleton_pids = np.array([self.pid(Pair(x, x)) for x in range(n)], dtype=np.intp)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, name: object) -> bool:
        return name in self.index

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LeafSet) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __repr__(self) -> str:
        return f"LeafSet({list(self.labels)!r})"

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def leaf_id(self, name: str) -> int:
        try:
            return self.index[name]
        except KeyError:
            raise UnknownLeaf(name) from None

    def pair(self, a: str, b: str | None = None) -> Pair:
        """Return the pair ``{a, b}`` (``{a}`` when *b* is omitted)."""
        i = self.leaf_id(a)
        j = i if b is None else self.leaf_id(b)
        return Pair(i, j) if i <= j else Pair(j, i)

    def pid(self, p: Pair) -> int:
        lo, hi = p
        if lo > hi:
            lo, hi = hi, lo
        n = len(self.labels)
        return lo * n - lo * (lo - 1) // 2 + (hi - lo)

    def pair_of(self, pid: int) -> Pair:
        return self.pairs[pid]

    def names(self, p: Pair) -> tuple[str, str]:
        return self.labels[p.lo], self.labels[p.hi]

    def pair_str(self, p: Pair) -> str:
        a, b = self.names(p)
        return f"{a} {b}"

    @cached_property
    def incidence(self) -> np.ndarray:
        """``(n_pairs, n_leaves)`` boolean matrix; entry ``[p, x]`` iff ``x`` in ``p``."""
        inc = np.zeros((self.n_pairs, len(self.labels)), dtype=bool)
        rows = np.arange(self.n_pairs)
        inc[rows, self.pair_lo] = True
        inc[rows, self.pair_hi] = True
        return inc

    def union(self, other: LeafSet) -> LeafSet:
        return LeafSet(set(self.labels) | set(other.labels))


def _coerce_pair(leaf_set: LeafSet, p) -> Pair:
    if isinstance(p, Pair):
        return p
    if isinstance(p, str):
        parts = p.split()
        if len(parts) == 1 and len(p) == 2 and p not in leaf_set:
            # compact "ab" notation for single-character leaves
            parts = [p[0], p[1]]
        return leaf_set.pair(*parts)
    a, b = p
    if isinstance(a, str):
        return leaf_set.pair(a, b)
    return Pair(min(a, b), max(a, b))


class Relation:
    """Immutable binary relation on the pairs of a leaf set.

    ``matrix[pid(p), pid(q)]`` is true iff ``p R q``.
    """

    def __init__(self, leaf_set: LeafSet, matrix: np.ndarray | None = None):
        self.leaf_set = leaf_set
        n = leaf_set.n_pairs
        if matrix is None:
            m = np.zeros((n, n), dtype=bool)
        else:
            m = np.array(matrix, dtype=bool, copy=True)
            if m.shape != (n, n):
                raise ValueError(f"matrix shape {m.shape} does not match {n} pairs")
        m.flags.writeable = False
        self._m = m

    @classmethod
    def from_pairs(cls, leaf_set: LeafSet, facts: Iterable) -> Relation:
        """Build a relation from ``(p, q)`` facts.

        Each pair may be a :class:`Pair`, a 2-tuple of leaf names, or a string
        such as ``"a b"`` (or ``"ab"`` when both leaves are single characters).
        """
        m = np.zeros((leaf_set.n_pairs, leaf_set.n_pairs), dtype=bool)
        for p, q in facts:
            m[leaf_set.pid(_coerce_pair(leaf_set, p)), leaf_set.pid(_coerce_pair(leaf_set, q))] = True
        return cls(leaf_set, m)

    @classmethod
    def parse(cls, text: str, leaves: Iterable[str] = ()) -> Relation:
        """Shorthand ``"ab<xy, xx<ab"`` for relations over one-character leaves."""
        facts = []
        for item in text.replace(";", ",").split(","):
            item = item.strip()
            if not item:
                continue
            left, right = (s.strip() for s in item.split("<"))
            facts.append((left, right))
        names = set(leaves)
        for left, right in facts:
            names.update(left)
            names.update(right)
        names.discard(" ")
        leaf_set = LeafSet(names)
        return cls.from_pairs(leaf_set, facts)

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    def __len__(self) -> int:
        return int(self._count)

    @cached_property
    def _count(self) -> int:
        return int(np.count_nonzero(self._m))

    def __contains__(self, fact) -> bool:
        p, q = fact
        ls = self.leaf_set
        return bool(self._m[ls.pid(_coerce_pair(ls, p)), ls.pid(_coerce_pair(ls, q))])

    def __iter__(self) -> Iterator[tuple[Pair, Pair]]:
        pairs = self.leaf_set.pairs
        for i, j in np.argwhere(self._m):
            yield pairs[i], pairs[j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.leaf_set == other.leaf_set and np.array_equal(self._m, other._m)

    def __hash__(self) -> int:
        return hash((self.leaf_set, self._m.tobytes()))

    def __le__(self, other: Relation) -> bool:
        _same_leaves(self, other)
        return not np.any(self._m & ~other._m)

    def __ge__(self, other: Relation) -> bool:
        return other <= self

    def __or__(self, other: Relation) -> Relation:
        _same_leaves(self, other)
        return Relation(self.leaf_set, self._m | other._m)

    def __and__(self, other: Relation) -> Relation:
        _same_leaves(self, other)
        return Relation(self.leaf_set, self._m & other._m)

    def __sub__(self, other: Relation) -> Relation:
        _same_leaves(self, other)
        return Relation(self.leaf_set, self._m & ~other._m)

    def __repr__(self) -> str:
        ls = self.leaf_set
        items = ", ".join(f"({ls.pair_str(p)} < {ls.pair_str(q)})" for p, q in self)
        return f"Relation({{{items}}})"

    def facts(self) -> list[tuple[Pair, Pair]]:
        return list(self)

    def named_facts(self) -> list[tuple[str, str, str, str]]:
        ls = self.leaf_set
        return [(*ls.names(p), *ls.names(q)) for p, q in self]

    def transposed(self) -> Relation:
        return Relation(self.leaf_set, self._m.T)

    def restricted(self, pids: Sequence[int] | np.ndarray) -> Relation:
        """Intersection with ``P x P`` for the given pair-id set ``P``."""
        mask = np.zeros(self.leaf_set.n_pairs, dtype=bool)
        mask[np.asarray(pids, dtype=np.intp)] = True
        return Relation(self.leaf_set, self._m & mask[:, None] & mask[None, :])

    def relabeled(self, leaf_set: LeafSet) -> Relation:
        """The same facts over a superset leaf set."""
        if leaf_set == self.leaf_set:
            return self
        src = self.leaf_set
        ids = np.array(
            [leaf_set.pid(leaf_set.pair(*src.names(p))) for p in src.pairs], dtype=np.intp
        )
        m = np.zeros((leaf_set.n_pairs, leaf_set.n_pairs), dtype=bool)
        m[np.ix_(ids, ids)] = self._m
        return Relation(leaf_set, m)

    @cached_property
    def _tc(self) -> Relation:
        return Relation(self.leaf_set, _warshall(self._m))


def _same_leaves(a: Relation, b: Relation) -> None:
    if a.leaf_set != b.leaf_set:
        raise LeafSetMismatch(f"{a.leaf_set!r} != {b.leaf_set!r}")


def _warshall(m: np.ndarray) -> np.ndarray:
    out = np.array(m, dtype=bool, copy=True)
    for k in range(out.shape[0]):
        col = out[:, k]
        if col.any():
            out[col] |= out[k]
    return out


def support_mask(r: Relation) -> np.ndarray:
    m = r.matrix
    return m.any(axis=0) | m.any(axis=1)


def support_plus_mask(r: Relation) -> np.ndarray:
    mask = support_mask(r)
    mask[r.leaf_set.singleton_pids] = True
    return mask


def support(r: Relation) -> set[Pair]:
    """Pairs occurring on either side of some fact of *r*."""
    pairs = r.leaf_set.pairs
    return {pairs[i] for i in np.flatnonzero(support_mask(r))}


def support_plus(r: Relation) -> set[Pair]:
    """``support(r)`` together with every singleton pair ``xx``."""
    pairs = r.leaf_set.pairs
    return {pairs[i] for i in np.flatnonzero(support_plus_mask(r))}


def transitive_closure(r: Relation) -> Relation:
    return r._tc


def is_asymmetric(r: Relation) -> bool:
    m = r.matrix
    return not np.any(m & m.T)


def cross_required(m: np.ndarray, supp: np.ndarray, leaf_set: LeafSet) -> np.ndarray:
    """Facts ``(ab, xy)`` forced by cross-consistency of ``m`` given support mask *supp*.

    For every target ``xy`` the leaves occurring in some pair below ``xy`` are
    collected; every supported pair built from two such leaves must be below
    ``xy`` too.
    """
    inc = leaf_set.incidence
    # below[t, x]: leaf x occurs in some pair p with (p, t) in m
    below = (m.T.astype(np.float32) @ inc.astype(np.float32)) > 0
    lo, hi = leaf_set.pair_lo, leaf_set.pair_hi
    # required[p, t] = supp[p] & below[t, lo(p)] & below[t, hi(p)]
    return supp[:, None] & below[:, lo].T & below[:, hi].T


def is_cross_consistent(r: Relation) -> bool:
    required = cross_required(r.matrix, support_mask(r), r.leaf_set)
    return not np.any(required & ~r.matrix)
