"""Generalized (possibly non-symmetric) metrics.

A GeneralizedMetric wraps a (0,2) tensor field g_ij that need not be
symmetric.  Its symmetric part must be invertible *as a function* (the
determinant must not be the zero rational function); pointwise
degeneracies only surface when evaluating at a point.  The inverse is the
exact adjugate-over-determinant of the symmetric part, and the induced
connection uses the full non-symmetric g:

    Gamma^i_jk = (1/2) g^{ia} (g_{ja,k} - g_{jk,a} + g_{ak,j}),

whose symmetric part coincides with the classical Christoffel symbols of
the symmetric part.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List

from .connection import ConnectionSpace
from .expr import Expr
from .tensor import TensorField

_HALF = Fraction(1, 2)


class SingularMetricError(Exception):
    """The symmetric part has identically vanishing determinant."""


def _det(rows: List[List[Expr]]) -> Expr:
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for col in range(n):
        minor = [r[:col] + r[col + 1 :] for r in rows[1:]]
        term = rows[0][col] * _det(minor)
        if col % 2:
            term = -term
        total = term if total is None else total + term
    return total


def determinant(t: TensorField) -> Expr:
    """Determinant of a (0,2) or (2,0) tensor viewed as a matrix."""
    if (t.r, t.s) not in ((0, 2), (2, 0)):
        raise ValueError("determinant needs a rank-2 tensor")
    n = t.dim
    rows = [[t[i, j] for j in range(n)] for i in range(n)]
    return _det(rows)


def invert_symmetric(g_sym: TensorField) -> TensorField:
    """Exact inverse of a symmetric (0,2) tensor, as a (2,0) tensor.

    Adjugate over determinant; raises SingularMetricError when the
    determinant is the zero function.
    """
    if (g_sym.r, g_sym.s) != (0, 2):
        raise ValueError("expected a (0,2) tensor")
    if not g_sym.is_symmetric_in(0, 1):
        raise ValueError("tensor is not symmetric")
    n = g_sym.dim
    rows = [[g_sym[i, j] for j in range(n)] for i in range(n)]
    det = _det(rows)
    if det.is_zero():
        raise SingularMetricError("metric determinant is identically zero")

    def cofactor(i: int, j: int) -> Expr:
        minor = [
            [rows[a][b] for b in range(n) if b != j] for a in range(n) if a != i
        ]
        if not minor:
            return Expr.const(g_sym.dim, 1)
        c = _det(minor)
        return -c if (i + j) % 2 else c

    # inverse[i][j] = cofactor(j, i) / det; symmetric input keeps it symmetric
    return TensorField.from_function(
        n, 2, 0, lambda idx: cofactor(idx[1], idx[0]) / det
    )


class GeneralizedMetric:
    __slots__ = ("dim", "g", "sym", "antisym", "inverse")

    def __init__(self, g: TensorField):
        if (g.r, g.s) != (0, 2):
            raise ValueError("metric must be a (0,2) tensor field")
        object.__setattr__(self, "dim", g.dim)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "sym", g.sym_part(0, 1))
        object.__setattr__(self, "antisym", g.antisym_part(0, 1))
        object.__setattr__(self, "inverse", invert_symmetric(self.sym))

    def __setattr__(self, name, value):
        raise AttributeError("GeneralizedMetric is immutable")

    def __repr__(self) -> str:
        return f"GeneralizedMetric(dim={self.dim})"


def generalized_christoffel(metric: GeneralizedMetric) -> ConnectionSpace:
    """Connection induced by the full non-symmetric metric."""
    n = metric.dim
    g = metric.g
    inv = metric.inverse

    def fn(idx):
        i, j, k = idx
        total = None
        for a in range(n):
            bracket = g[j, a].diff(k) - g[j, k].diff(a) + g[a, k].diff(j)
            term = inv[i, a] * bracket
            total = term if total is None else total + term
        return total.scale(_HALF)

    return ConnectionSpace(TensorField.from_function(n, 1, 2, fn))
