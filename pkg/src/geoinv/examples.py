"""Bundled demonstration spaces for the `example` subcommand and tests."""

from __future__ import annotations

from fractions import Fraction

from .connection import ConnectionSpace
from .expr import Expr, parse_expr
from .mappings import AlmostGeodesicPi1, geodesic_deformation
from .metric import GeneralizedMetric, generalized_christoffel
from .tensor import TensorField

DIM = 3


def _e(text: str) -> Expr:
    return parse_expr(text, DIM)


def example1_metric() -> GeneralizedMetric:
    """Non-symmetric metric with squared-coordinate diagonal and a
    coordinate-valued antisymmetric part."""
    rows = [
        ["x1^2", "x1", "x2"],
        ["-x1", "x2^2", "x3"],
        ["-x2", "-x3", "x3^2"],
    ]
    entries = {
        (i, j): _e(rows[i][j]) for i in range(DIM) for j in range(DIM)
    }
    return GeneralizedMetric(TensorField.from_entries(DIM, 0, 2, entries))


def example1_space() -> ConnectionSpace:
    return generalized_christoffel(example1_metric())


def example2_metric() -> GeneralizedMetric:
    """The symmetric part of the example-1 metric (a flat diagonal metric)."""
    entries = {(i, i): _e(f"x{i + 1}^2") for i in range(DIM)}
    return GeneralizedMetric(TensorField.from_entries(DIM, 0, 2, entries))


def example2_space() -> ConnectionSpace:
    return generalized_christoffel(example2_metric())


def example2_default_mapping() -> AlmostGeodesicPi1:
    """Default almost-geodesic mapping on the example-2 space.

    The 1-form psi = (2/x1, 0, 0) satisfies psi_j|n = -psi_j psi_n on this
    space, so the geodesic-type deformation psi.d + d.psi meets the
    almost-geodesic condition with a = 2 psi (x) psi.
    """
    psi = TensorField.from_entries(DIM, 0, 1, {(0,): _e("2/x1")})
    deformation = geodesic_deformation(psi)
    a = TensorField.from_function(
        DIM, 0, 2, lambda idx: (psi[(idx[0],)] * psi[(idx[1],)]).scale(2)
    )
    return AlmostGeodesicPi1(a, deformation)
