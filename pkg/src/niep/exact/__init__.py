"""Exact scalars, polynomials, matrices and Sturm root isolation."""
from .matrix import (
    ExactMatrix,
    SingularMatrixError,
    charpoly,
    inverse,
    matrix_poly_eval,
    minpoly,
    rank,
    rank_of_rows,
)
from .poly import Poly, is_squarefree, poly_from_roots, poly_gcd, pseudo_remainder, squarefree_part
from .roots import (
    IsolatingInterval,
    isolate_real_roots,
    isolate_smallest_nonneg_root,
    sturm_root_count,
    sturm_sequence,
)
from .scalars import FieldError, QuadExt, Scalar, fraction_str, sign, sqrt_of, to_fraction

__all__ = [
    "ExactMatrix",
    "FieldError",
    "IsolatingInterval",
    "Poly",
    "QuadExt",
    "Scalar",
    "SingularMatrixError",
    "charpoly",
    "fraction_str",
    "inverse",
    "is_squarefree",
    "isolate_real_roots",
    "isolate_smallest_nonneg_root",
    "matrix_poly_eval",
    "minpoly",
    "poly_from_roots",
    "poly_gcd",
    "pseudo_remainder",
    "rank",
    "rank_of_rows",
    "sign",
    "sqrt_of",
    "squarefree_part",
    "sturm_root_count",
    "sturm_sequence",
    "to_fraction",
]
