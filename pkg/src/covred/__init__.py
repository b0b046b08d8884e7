"""Covering rough-set reducts with incremental maintenance under object updates."""

from covred.approx import (
    Consistency,
    MinimalDescriptionTable,
    RegionReport,
    classify_consistency,
    lower_approx,
    minimal_descriptions,
    regions,
    union_reducible_blocks,
    upper_approx,
)
from covred.core import (
    Covering,
    CoveringSystem,
    DecisionPartition,
    ObjectSet,
    build_system,
    system_from_labels,
    union_covering,
    validate,
)
from covred.dynamic import (
    AddSpec,
    DeleteSpec,
    IncrementalState,
    apply_add,
    apply_delete,
    initial_state,
    rebuild,
)
from covred.reduct import (
    MonotoneCNF,
    ReductSet,
    oracle_reducts,
    reduced_disjunctive_form,
    reducts,
    related_function,
)
from covred.related import RelatedFamily, WitnessBlocks, related_family, witness_blocks

__all__ = [
    "AddSpec",
    "Consistency",
    "Covering",
    "CoveringSystem",
    "DecisionPartition",
    "DeleteSpec",
    "IncrementalState",
    "MinimalDescriptionTable",
    "MonotoneCNF",
    "ObjectSet",
    "ReductSet",
    "RegionReport",
    "RelatedFamily",
    "WitnessBlocks",
    "apply_add",
    "apply_delete",
    "build_system",
    "classify_consistency",
    "initial_state",
    "lower_approx",
    "minimal_descriptions",
    "oracle_reducts",
    "rebuild",
    "reduced_disjunctive_form",
    "reducts",
    "regions",
    "related_family",
    "related_function",
    "system_from_labels",
    "union_covering",
    "union_reducible_blocks",
    "upper_approx",
    "validate",
    "witness_blocks",
]
