"""Exact L-th power decisions in GL_n over length-two local principal ideal rings."""
from .classify import (CanonicalForm, ClassReport, canonical_cc, canonical_form,
                       canonical_rs, centralizer_order, classify)
from .count import class_counts, coprime_series, gl_order, series
from .linalg import (MatK, MatO2, annihilates, block_diag, charpoly, companion,
                     cyclic_vector, det, is_gl, jordan_O2, minpoly_k,
                     rcf_conjugator_k)
from .poly import (PolyK, PolyO2, count_N, count_N_kL, count_N_O2L,
                   fundamental_factorization, hensel_root_lift_k,
                   hensel_root_lift_O2, hensel_split, is_irreducible_k,
                   is_L_power_poly, is_rth_power_of_fundamental, k_factor,
                   k_L_power_test, monic_divmod)
from .power import (PowerDecision, field_root, is_lth_power, lth_root,
                    matrix_hensel_solve)
from .ring import KElem, O2Elem, RingSpec, lift, parse_ring, theta

__version__ = "0.1.0"
