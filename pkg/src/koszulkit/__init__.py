"""Exact computations with ranked posets: the quadratic algebra R, order complexes,
Cohen-Macaulay and Koszul verdicts, Hilbert series and the numerical Koszul defect."""

from __future__ import annotations

__version__ = "0.1.0"

from .dual_koszul import (cm_check, dual_dims, hs1_formula, hs2_formula, koszul_verdict,
                          koszul_via_recursion, nkd, numerically_koszul,
                          numerically_koszul_report)
from .errors import *  # noqa: F401,F403
from .ext import ext_table
from .linalg import GF2, QQ, Field, complex_cohomology, kernel_basis, quotient_coordinates, rref
from .order_complex import (build, interval_space_profile, reduced_cohomology,
                            relative_cohomology)
from .phi_map import build_phi, cochain_sign_check, quasi_iso_check, top_degree_checks
from .poset import (RankedPoset, boolean, chain, generate, hat, is_uniform, parse, prism,
                    random_ranked, read_poset, simplex_boundary, sphere_cross_interval_hat,
                    subposet, wedge)
from .ralgebra import (d_gamma_matrix, hilbert_R, internal_cohomology, rank_shift_check,
                       relation_spanners, rnk_space, truncation_identity_check)
from .series import TruncatedSeries
