"""Formal concept enumeration with Close-by-One style engines.

Two engines share one output type: :func:`enumerate_horizontal` keeps the
context as packed rows and extents as object lists, :func:`enumerate_vertical`
keeps both as sparse (block index, block value) columns.
"""

from inclose._engine import (
    BudgetExhausted,
    ConceptTree,
    EnumerationError,
    EnumerationResult,
    EnumerationStats,
    IncludeBottom,
)
from inclose.bitstore import WordWidth
from inclose.context import (
    Concept,
    ConceptSet,
    ContractError,
    FormalContext,
    close_attributes,
    close_objects,
    derive_attributes,
    derive_objects,
    is_concept,
    leq,
    transpose,
)
from inclose.formats import read_context, write_context
from inclose.horizontal import HorizontalEngineConfig, enumerate_horizontal
from inclose.oracle import RandomContextSpec, brute_force_concepts, diff_concept_sets, random_context
from inclose.vertical import VerticalEngineConfig, enumerate_vertical

__all__ = [
    "BudgetExhausted", "Concept", "ConceptSet", "ConceptTree", "ContractError", "EnumerationError",
    "EnumerationResult", "EnumerationStats", "FormalContext", "HorizontalEngineConfig", "IncludeBottom",
    "RandomContextSpec", "VerticalEngineConfig", "WordWidth", "brute_force_concepts", "close_attributes",
    "close_objects", "derive_attributes", "derive_objects", "diff_concept_sets", "enumerate_horizontal",
    "enumerate_vertical", "is_concept", "leq", "random_context", "read_context", "transpose",
    "write_context",
]
