"""Exact minimal distances between disjoint lattice polytopes in small cubes.

The package has two pillars.  `bruteforce` measures the minimal gap
directly by exhaustive integer scans at desk scale.  `certify` proves the
closed-form answer for every cube size at least 6 by reducing the problem
to finitely many univariate integer polynomials and isolating their roots.
`geometry`, `model`, and `intpoly` supply the exact kernels both rest on;
nothing anywhere computes with floats.
"""

from .bruteforce import (DEFAULT_BUDGET, POINT_SEGMENT, POINT_TRIANGLE,
                         SEGMENT_SEGMENT, SMALL_TABLE, BudgetExceededError,
                         EpsResult, check_point_triangle_gap,
                         collinear_triple_count, eps_bruteforce,
                         permitted_classes, reproduce_small_table,
                         triangle_count, verify_small_k_formula)
from .certificate import Certificate, fmt_exact
from .certify import (IntegerSet, canonical_pair_key, canonicalize_pair,
                      certify_coarse_bound_margin, certify_domination,
                      certify_optimal_search, domination_records,
                      gen_domination_candidates, gen_search_candidates,
                      reconstruct_pair, search_optimal_encodings)
from .geometry import (LatticeSimplex, apply_cube_symmetry, cube_symmetries,
                       extremal_pair, sq_distance)
from .intpoly import (ALL_INTEGERS, IntPoly, RootIsolation,
                      integer_solutions_of_abs_eq, isolate_real_roots,
                      positive_for_all_integers_geq, poly_gcd,
                      square_free_part, sturm_chain)
from .model import (EXTREMAL_GAP_DENOMINATOR, FORMULA_EXCEPTION_K,
                    PairEncoding, corner_map, corner_map_polynomials,
                    corner_sum, encode_pair, extremal_gap_squared, gram_det,
                    in_envelope, in_monotone_region, offset_det,
                    sq_dist_affine_hulls)

__version__ = "0.1.0"

__all__ = [
    "ALL_INTEGERS", "BudgetExceededError", "Certificate", "DEFAULT_BUDGET",
    "EXTREMAL_GAP_DENOMINATOR", "EpsResult", "FORMULA_EXCEPTION_K",
    "IntPoly", "IntegerSet", "LatticeSimplex", "PairEncoding",
    "POINT_SEGMENT", "POINT_TRIANGLE", "RootIsolation", "SEGMENT_SEGMENT",
    "SMALL_TABLE", "apply_cube_symmetry", "canonical_pair_key",
    "canonicalize_pair", "certify_coarse_bound_margin", "certify_domination",
    "certify_optimal_search", "check_point_triangle_gap",
    "collinear_triple_count", "corner_map", "corner_map_polynomials",
    "corner_sum", "cube_symmetries", "domination_records", "encode_pair",
    "eps_bruteforce", "extremal_gap_squared", "extremal_pair", "fmt_exact",
    "gen_domination_candidates", "gen_search_candidates", "gram_det",
    "in_envelope", "in_monotone_region", "integer_solutions_of_abs_eq",
    "isolate_real_roots", "offset_det", "permitted_classes", "poly_gcd",
    "positive_for_all_integers_geq", "reconstruct_pair",
    "reproduce_small_table", "search_optimal_encodings",
    "sq_dist_affine_hulls", "sq_distance", "square_free_part", "sturm_chain",
    "triangle_count", "verify_small_k_formula",
]
