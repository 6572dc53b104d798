"""Exact lattice-polytope geometry, toric residues, and mirror series.

Everything is computed over the integers and `fractions.Fraction`; there
are no floating-point numbers anywhere in the library or its reports.
"""

from .laurent import (
    LaurentPolynomial,
    cayley_polynomial,
    hessian,
    hessian_by_subsets,
    log_derivative,
    mixed_hessian,
    monomial,
    multidegree_component,
)
from .linalg import (
    NOT_UNIQUE,
    det,
    integer_kernel_basis,
    nullspace,
    quotient_by_vector,
    rank,
    solve_functional,
    solve_linear,
)
from .mirror import (
    P3XP3,
    P4XP1,
    ProductFamily,
    WpsFamily,
    draw_wps_points,
    product_intersection_series,
    q_to_p,
    verify_family,
    wps_closed_form,
    wps_intersection_series,
    wps_nef_partition,
    wps_vertex_vectors,
    yukawa_fixture,
)
from .polytope import (
    DualNefPartition,
    LatticePolytope,
    NefPartition,
    NefPartitionError,
    cayley_polytope,
    check_nef_partition,
    convex_hull,
    dual_nef_partition,
    dual_polytope,
    interior_lattice_points,
    is_reflexive,
    lattice_points,
    minkowski_sum,
    mixed_volume,
)
from .residue import (
    GradedPieceBasis,
    ResidueFunctional,
    check_mixed_volume_identity,
    draw_regular_coefficients,
    graded_basis,
    interior_basis,
    mixed_residue,
    residue_functional,
    residue_of_polynomial,
    system_from_coefficients,
)
from .series import (
    RationalFunctionSpec,
    TruncatedSeries,
    expand_rational,
    inv_factorial,
    linear_form_power_coefficient,
    series_add,
    series_mul,
)

__version__ = "0.1.0"

__all__ = [
    "LaurentPolynomial",
    "cayley_polynomial",
    "hessian",
    "hessian_by_subsets",
    "log_derivative",
    "mixed_hessian",
    "monomial",
    "multidegree_component",
    "NOT_UNIQUE",
    "det",
    "integer_kernel_basis",
    "nullspace",
    "quotient_by_vector",
    "rank",
    "solve_functional",
    "solve_linear",
    "P3XP3",
    "P4XP1",
    "ProductFamily",
    "WpsFamily",
    "draw_wps_points",
    "product_intersection_series",
    "q_to_p",
    "verify_family",
    "wps_closed_form",
    "wps_intersection_series",
    "wps_nef_partition",
    "wps_vertex_vectors",
    "yukawa_fixture",
    "DualNefPartition",
    "LatticePolytope",
    "NefPartition",
    "NefPartitionError",
    "cayley_polytope",
    "check_nef_partition",
    "convex_hull",
    "dual_nef_partition",
    "dual_polytope",
    "interior_lattice_points",
    "is_reflexive",
    "lattice_points",
    "minkowski_sum",
    "mixed_volume",
    "GradedPieceBasis",
    "ResidueFunctional",
    "check_mixed_volume_identity",
    "draw_regular_coefficients",
    "graded_basis",
    "interior_basis",
    "mixed_residue",
    "residue_functional",
    "residue_of_polynomial",
    "system_from_coefficients",
    "RationalFunctionSpec",
    "TruncatedSeries",
    "expand_rational",
    "inv_factorial",
    "linear_form_power_coefficient",
    "series_add",
    "series_mul",
    "__version__",
]
