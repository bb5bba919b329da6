"""Exact polynomial arithmetic over Q."""
from .forms import (BiForm, bezout_matrix, bezout_rows, first_principal_subresultant_minor,
                    resultant, sylvester_matrix, sylvester_rows)
from .kernels import BACKEND
from .matrix import PolyMatrix, det_interpolation
from .poly import (SV, TU, BiHomPoly, MoebiusChange, UniPoly, apply_moebius, bihom_gcd,
                   bihom_gcd_many, format_form, format_poly, multiplicity_of,
                   normalize_primitive, poly_gcd, poly_gcd_many, same_up_to_scalar,
                   squarefree_decomposition, squarefree_part)
from .roots import RootApprox, complex_roots_approx

__all__ = [
    "BACKEND", "SV", "TU", "BiForm", "BiHomPoly", "MoebiusChange", "PolyMatrix",
    "RootApprox", "UniPoly", "apply_moebius", "bezout_matrix", "bezout_rows",
    "bihom_gcd", "bihom_gcd_many", "complex_roots_approx", "det_interpolation",
    "first_principal_subresultant_minor", "format_form", "format_poly",
    "multiplicity_of", "normalize_primitive", "poly_gcd", "poly_gcd_many", "resultant",
    "same_up_to_scalar", "squarefree_decomposition", "squarefree_part",
    "sylvester_matrix", "sylvester_rows",
]
