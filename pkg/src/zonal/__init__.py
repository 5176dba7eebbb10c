"""Exact zonal spherical functions of the Gelfand pairs (G(r,d,n), S_n)."""
from .cosets import (
    burnside_counts,
    count_congruence_tuples,
    double_coset_size,
    enumerate_double_cosets,
    enumerate_spherical_indices,
)
from .cyclotomic import CyclotomicNumber, cyclo_root, cyclotomic_polynomial
from .errors import BudgetExceeded, InternalInconsistency, InvalidParameters
from .hypergeom import HypergeomSpec, character_matrix, evaluate, gauss_2f1_terminating
from .identities import LinearizationTerm, product_expand, rahman_identity_check, verify_product_formula
from .indices import CosetIndex, GroupParams, SphericalIndex
from .laplace import (
    BiInvariantOperator,
    build_operator,
    closed_form_eigenvalue,
    contiguity_check,
    hamming_distance,
    verify_eigenfunction,
)
from .oracle import brute_force_double_cosets, certify_spherical_table, convolution_check
from .report import Check, Report
from .spherical import SphericalTable, dimension, spherical_table, spherical_value, verify_orthogonality
from .wreath import GroupElement, coset_signature, enumerate_group

__version__ = "0.1.0"
