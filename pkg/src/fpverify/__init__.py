"""Finitely presented groups: coset enumeration, low-index subgroups,
subgroup presentations and abelian invariants, quotient identification, and
a manifest-driven verification pipeline."""

from __future__ import annotations

__version__ = "0.1.0"

from .cosets import CosetTable, EnumerationLimitExceeded, EnumerationLimits, todd_coxeter
from .homology import (AbelianInvariants, abelian_invariants, presentation_of_subgroup,
                       simplify_presentation, smith_normal_form, subgroup_presentation)
from .lowindex import (SearchBudgetExhausted, SubgroupSearchOptions, classes_containing,
                       low_index_subgroups, normal_subgroups_of_index)
from .perms import Permutation, StabilizerChain, group_order
from .presentation import (ParseError, Presentation, WordTable, parse_presentation, parse_word,
                           read_word_file)
from .quotients import (CayleyTable, fixed_cosets, identify, normalizer_index, quotient_on_fixed)
from .surface import (SurfaceInvariants, beauville_bound, canonical_degree_chain,
                      etale_cover_invariants)
from .words import Word

__all__ = [
    "AbelianInvariants", "CayleyTable", "CosetTable", "EnumerationLimitExceeded",
    "EnumerationLimits", "ParseError", "Permutation", "Presentation", "SearchBudgetExhausted",
    "StabilizerChain", "SubgroupSearchOptions", "SurfaceInvariants", "Word", "WordTable",
    "abelian_invariants", "beauville_bound", "canonical_degree_chain", "classes_containing",
    "etale_cover_invariants", "fixed_cosets", "group_order", "identify", "low_index_subgroups",
    "normal_subgroups_of_index", "normalizer_index", "parse_presentation", "parse_word",
    "presentation_of_subgroup", "quotient_on_fixed", "read_word_file", "simplify_presentation",
    "smith_normal_form", "subgroup_presentation", "todd_coxeter",
]
