"""Finite CF-approximation spaces, their closed-set domains, and the tools to check them."""

from .cf import (
    CFSpace,
    ClosedFamily,
    FiniteFamily,
    build_space,
    closed_set_poset,
    dense_iso,
    enumerate_closed_sets,
    is_cf_closed,
    is_dense_subspace,
    is_topological,
    principal_subspace,
    restrict_subspace,
    validate_cf_space,
    way_below_closed,
)
from .classify import (
    classify_space,
    join_saturation,
    least_in_ideal,
    sl_cusl_criterion,
    supremum_in_ideal,
    witness_families,
)
from .errors import CFSpaceError, InputError, ViolationError
from .ga import GASpace, Relation
from .induced import induce_cf_space, induce_topological_space, representation_roundtrip
from .morphisms import compose, identity_relation, induced_map, validate_approximable
from .poset import FinitePoset, are_isomorphic, classify_poset, make_poset
from .sets import ElemSet, Universe

__version__ = "0.1.0"

__all__ = [
    "CFSpace",
    "CFSpaceError",
    "ClosedFamily",
    "ElemSet",
    "FiniteFamily",
    "FinitePoset",
    "GASpace",
    "InputError",
    "Relation",
    "Universe",
    "ViolationError",
    "are_isomorphic",
    "build_space",
    "classify_poset",
    "classify_space",
    "closed_set_poset",
    "compose",
    "dense_iso",
    "enumerate_closed_sets",
    "identity_relation",
    "induce_cf_space",
    "induce_topological_space",
    "induced_map",
    "is_cf_closed",
    "is_dense_subspace",
    "is_topological",
    "join_saturation",
    "least_in_ideal",
    "make_poset",
    "principal_subspace",
    "representation_roundtrip",
    "restrict_subspace",
    "sl_cusl_criterion",
    "supremum_in_ideal",
    "validate_approximable",
    "validate_cf_space",
    "way_below_closed",
    "witness_families",
]
