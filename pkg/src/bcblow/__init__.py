"""Exact Bott-Chern characteristic classes of blow-ups.

Graded cohomology rings, universal Chern class formulas, the
Riemann-Roch-without-denominators series, the blow-up ring and invariant-form
Bott-Chern cohomology of nilmanifolds.
"""
from .blowup import (BlowupClass, BlowupRing, EmbeddingData, ExceptionalClass, ExceptionalRing,
                     alpha_binomial_form, alpha_division_form, appendix_suite, blowup_chern_character,
                     blowup_ring, blowup_total_chern, eq_426_431_suite, exceptional_ring, pushforward_j,
                     theorem_components)
from .gring import (GradedClass, LinearRingMap, RingPresentation, module_map, projection_formula_check,
                    ring_hom, ring_new)
from .nilbc import (GaussQ, InvariantForm, StructureEquations, bc_dimension, bc_table, build_bicomplex,
                    is_bc_exact, iwasawa, iwasawa_blowup_check, torus)
from .presets import named_embedding, universal_embedding
from .rrwd import FSeries, compute_f, f_specialize, rr_without_denominators
from .symchern import (FormalBundle, TotalClass, chern_character, chern_of_dual, chern_of_tensor,
                       chern_of_wedge, direct_sum, elementary_from_newton, newton_from_elementary,
                       todd_series)

__version__ = "0.1.0"
