"""Groebner bases, syzygies, resolutions and the invariants built from them."""
from .core import (GroebnerBasis, IdealOrModule, contains, groebner_basis, ideal_sum,
                   normal_form, vectors_to_matrix)
from .resolution import (BettiTable, Resolution, koszul_matrix, minimal_free_resolution,
                         minimal_presentation, prune_units, syzygies)
from .invariants import (AnnihilatorResult, HilbertData, annihilator, codim, cokernel_dims,
                         hilbert, ideal_quotient, intersect, module_krull_dim, saturation)

__all__ = [
    "GroebnerBasis", "IdealOrModule", "contains", "groebner_basis", "ideal_sum",
    "normal_form", "vectors_to_matrix", "BettiTable", "Resolution", "koszul_matrix",
    "minimal_free_resolution", "minimal_presentation", "prune_units", "syzygies",
    "AnnihilatorResult", "HilbertData", "annihilator", "codim", "cokernel_dims", "hilbert",
    "ideal_quotient", "intersect", "module_krull_dim", "saturation",
]
