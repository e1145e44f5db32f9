"""The intersection Q of four quadrics in P^11, its lines and special loci."""
from .core import (DISPLAY_ORDER, Line, Quadrics, apply_s4_line, apply_s4_point,
                   from_display, jacobian, jacobian_rank, line_in_q, quadrics, s4_action,
                   tangent_forms, to_display)
from .sampling import line_through, random_line, rng_for, sample_on, sample_point
from .families import HypParamPoint, family_z3, family_z5, hyp_param, random_hyp_point
from .loci import Locus, LocusLibrary, locus_library

__all__ = [
    "DISPLAY_ORDER", "Line", "Quadrics", "apply_s4_line", "apply_s4_point", "from_display",
    "jacobian", "jacobian_rank", "line_in_q", "quadrics", "s4_action", "tangent_forms",
    "to_display", "line_through", "random_line", "rng_for", "sample_on", "sample_point",
    "HypParamPoint", "family_z3", "family_z5", "hyp_param", "random_hyp_point", "Locus",
    "LocusLibrary", "locus_library",
]
