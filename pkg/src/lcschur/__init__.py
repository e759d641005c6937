"""Independence polynomials, two-row Schur projections of chromatic symmetric
functions, and instance-level checks of spider and pineapple log-concavity."""
from .chromatic import (
    stable_two_block_counts,
    two_row_X,
    two_row_X_alpha,
    two_row_Y_fast,
    two_row_Y_oracle,
)
from .errors import (
    ConstantTermNotOne,
    LcSchurError,
    NotAPartition,
    NotInImage,
    ParseError,
    TooLarge,
    WrongCase,
)
from .graph import Graph, build_graph, make_pineapple, make_spider
from .poly import (
    IntPolynomial,
    indep_poly,
    indep_poly_bruteforce,
    is_log_concave,
    is_strongly_log_concave,
    is_unimodal,
)
from .schur2 import TwoRowProfile, fp_profile, is_2s_positive, schur
from .verifier import (
    CaseTag,
    classify_alpha,
    phi,
    phi_inverse,
    verify_elimination,
    verify_pineapple,
    verify_spider,
)

__all__ = [
    "CaseTag",
    "ConstantTermNotOne",
    "Graph",
    "IntPolynomial",
    "LcSchurError",
    "NotAPartition",
    "NotInImage",
    "ParseError",
    "TooLarge",
    "TwoRowProfile",
    "WrongCase",
    "build_graph",
    "classify_alpha",
    "fp_profile",
    "indep_poly",
    "indep_poly_bruteforce",
    "is_2s_positive",
    "is_log_concave",
    "is_strongly_log_concave",
    "is_unimodal",
    "make_pineapple",
    "make_spider",
    "phi",
    "phi_inverse",
    "schur",
    "stable_two_block_counts",
    "two_row_X",
    "two_row_X_alpha",
    "two_row_Y_fast",
    "two_row_Y_oracle",
    "verify_elimination",
    "verify_pineapple",
    "verify_spider",
]
