"""Exact tools for deciding, certifying and bounding realizability of real spectra
by nonnegative matrices (general, diagonalizable and symmetric variants)."""
from .classify import Verdict, classify, replay
from .constructions import (
    catalog,
    family_lm_sigma_hat,
    family_nonneg_threshold,
    family_perturbed,
    guo_extend,
    suleimanova_companion,
)
from .exact import ExactMatrix, Poly, QuadExt
from .spectra import Spectrum, power_sum
from .verification import is_diagonalizable, is_irreducible, jordan_structure, verify_spectrum

__all__ = [
    "ExactMatrix",
    "Poly",
    "QuadExt",
    "Spectrum",
    "Verdict",
    "catalog",
    "classify",
    "family_lm_sigma_hat",
    "family_nonneg_threshold",
    "family_perturbed",
    "guo_extend",
    "is_diagonalizable",
    "is_irreducible",
    "jordan_structure",
    "power_sum",
    "replay",
    "suleimanova_companion",
    "verify_spectrum",
]
