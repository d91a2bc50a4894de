"""Nevanlinna-Pick interpolation on the bidisk: solvability, extremality,
and uniqueness certificates, with the curve-intersection and Hardy-space
machinery used to verify strong-Pick-set criteria on concrete instances."""

__version__ = "0.1.0"

from ._backend import BACKEND
from .numcore import (
    EigenDecomposition,
    HermitianMatrix,
    PsdStatus,
    Tolerances,
    complex_null_space,
    herm_eigen,
    null_vector,
    numeric_rank,
    poly_roots,
    poly_roots_clustered,
    psd_status,
    schur_product,
    entrywise_quotient,
)
from .poly import (
    BiPoly,
    Blaschke,
    ProjPoly,
    RationalInner,
    UniPoly,
    blaschke_to_fraction,
    coprime,
    graph_poly,
    homogenize,
    make_rational_inner,
    reflect,
    sylvester_resultant,
)
from .pick1d import (
    PickProblem1D,
    interpolate_blaschke,
    pick_matrix,
    solvable,
    solve_schur,
    solve_singular,
    unique,
)
from .agler import (
    AglerPair,
    Extremality,
    KernelCertificate,
    Minimality,
    NonUniquenessCertificate,
    PickProblem2D,
    SolvabilityStatus,
    SzegoVerdict,
    admissible_check,
    data_matrices,
    dykstra_decompose,
    extremality_scan,
    extremality_test,
    kernel_library,
    minimality_test,
    nonuniqueness_certificate,
    nonuniqueness_flag,
    solvability_status,
    szego_kernel,
    szego_uniqueness_test,
    unsolvability_certificate,
)
from .hardy2 import (
    h2_inner,
    h2_norm_sq,
    hs_condition_sample,
    monomial_certificate,
    orthogonality_check,
    torus_integral_inner,
    torus_integral_norm,
)
from .bezout import (
    IntersectionReport,
    bezout_total,
    common_zero_bound_check,
    finite_common_zeros,
    infinity_intersections,
    inner_infinity_count,
    intersection_report,
    zeros_on_variety,
)
from .classify import (
    ClassificationReport,
    GatePrediction,
    Verdict,
    conjecture_sweep,
    degree_gate,
    one_variable_classifier,
    sample_variety_nodes,
)
