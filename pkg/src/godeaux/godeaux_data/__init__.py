"""The standard complex over k[y0..y3] and the relation system derived from it."""
from .standard import PAIRS, StandardComplex, standard_complex
from .derive import (RelationSystem, canonical_gamma, derive_relations, frozen_relations,
                     gauge_reduce_o,
                     o_normal_positions)
from .reference import pfaffian4, pfaffian_matrices, printed_l1

__all__ = [
    "PAIRS", "StandardComplex", "standard_complex", "RelationSystem", "canonical_gamma",
    "derive_relations", "frozen_relations", "gauge_reduce_o", "o_normal_positions", "pfaffian4",
    "pfaffian_matrices", "printed_l1",
]
