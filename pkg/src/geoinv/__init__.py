"""Exact invariants of mappings of affine connection spaces with torsion.

Symbolic engine over exact rational functions: curvature objects of
(non-)symmetric connections and generalized metrics, Thomas-type and
Weyl-type invariants of geodesic-type mappings, exact at-point invariance
verification, and the family coefficient-matrix rank certificate.
"""

from .expr import Expr, ExprError, ExprSyntaxError, PoleError, parse_expr
from .tensor import IndexPair, TensorField, contract, kronecker_delta
from .connection import (
    ConnectionSpace,
    CurvatureCoefficients,
    covariant_derivative,
    covariant_derivative_kind,
    curvature_R,
    curvature_family_K,
    ricci,
    ricci_last,
)
from .metric import (
    GeneralizedMetric,
    SingularMetricError,
    determinant,
    generalized_christoffel,
    invert_symmetric,
)
from .mappings import (
    AlmostGeodesicPi1,
    EquitorsionGeodesic,
    General,
    MappingInstance,
    MappingSide,
    MappingSpecError,
    SecondClass,
    apply_mapping,
    deformation_tensor,
    geodesic_deformation,
    geodesic_residual,
    omega_geodesic,
    omega_object,
    psi_from_connections,
    second_class_deformation,
)
from .invariants import (
    ClassSelector,
    InvariantResult,
    all_selectors,
    thomas_antisym,
    thomas_basic,
    thomas_derived_second,
    thomas_general,
    thomas_geodesic,
    weyl_almost_geodesic,
    weyl_almost_geodesic_deformation,
    weyl_basic,
    weyl_derived_second,
    weyl_family,
    weyl_family_equitorsion,
)
from .analysis import (
    CoefficientMatrix,
    InvariantRequest,
    VerificationReport,
    coefficient_matrix,
    invariance_check,
    rank_exact,
    reduction_check,
    sample_points,
    suite_for,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
