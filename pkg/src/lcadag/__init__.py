"""Realizability of LCA constraints by DAGs and phylogenetic networks."""

from .canonical import (
    ClassOrder,
    ClassPartition,
    RealizationResult,
    algorithm_real,
    canonical_dag,
    canonical_network,
    class_order,
    equivalence_classes,
)
from .closure import (
    ClosureResult,
    RealizabilityVerdict,
    check_x1,
    check_x2,
    classical_closure,
    is_realizable,
    is_strictly_realizable,
    plus_closure,
)
from .dag import (
    Dag,
    RealizationReport,
    clusters,
    extract_leq,
    extract_strict,
    hasse,
    incomparable,
    is_ancestor,
    is_phylogenetic,
    is_regular,
    is_two_lca_relevant,
    lca_set,
    lca_unique,
    shortcuts,
    transitive_reduction,
    verify_realizes,
    verify_strictly_realizes,
)
from .errors import (
    CycleError,
    InvalidConstraint,
    InvalidDag,
    InvalidLeafName,
    LcaError,
    LeafSetMismatch,
    NotRealizable,
    ParseError,
    UnknownLeaf,
    UnknownVertex,
    X1Violated,
)
from .incomparability import (
    ConstraintPair,
    PairVerdict,
    augment,
    realize_pair,
    verify_pair,
)
from .relation import (
    ROOT_LABEL,
    LeafSet,
    Pair,
    Relation,
    is_asymmetric,
    is_cross_consistent,
    support,
    support_plus,
    transitive_closure,
)

__all__ = [
    "algorithm_real",
    "augment",
    "canonical_dag",
    "canonical_network",
    "check_x1",
    "check_x2",
    "class_order",
    "classical_closure",
    "ClassOrder",
    "ClassPartition",
    "ClosureResult",
    "clusters",
    "ConstraintPair",
    "CycleError",
    "Dag",
    "equivalence_classes",
    "extract_leq",
    "extract_strict",
    "hasse",
    "incomparable",
    "InvalidConstraint",
    "InvalidDag",
    "InvalidLeafName",
    "is_ancestor",
    "is_asymmetric",
    "is_cross_consistent",
    "is_phylogenetic",
    "is_realizable",
    "is_regular",
    "is_strictly_realizable",
    "is_two_lca_relevant",
    "lca_set",
    "lca_unique",
    "LcaError",
    "LeafSet",
    "LeafSetMismatch",
    "NotRealizable",
    "Pair",
    "PairVerdict",
    "ParseError",
    "plus_closure",
    "realize_pair",
    "RealizabilityVerdict",
    "RealizationReport",
    "RealizationResult",
    "Relation",
    "ROOT_LABEL",
    "shortcuts",
    "support",
    "support_plus",
    "transitive_closure",
    "transitive_reduction",
    "UnknownLeaf",
    "UnknownVertex",
    "verify_pair",
    "verify_realizes",
    "verify_strictly_realizes",
    "X1Violated",
]
