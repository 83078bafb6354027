"""Affine connection spaces with torsion.

A ConnectionSpace holds possibly non-symmetric coefficients L^i_jk as a
(1,2) tensor field.  The symmetric part in the lower indices,

    sym^i_jk     = (L^i_jk + L^i_kj) / 2,
    torsion^i_jk = (L^i_jk - L^i_kj) / 2,

is itself a torsion-free connection (the associated connection); covariant
differentiation and the curvature tensor

    R^i_jmn = sym^i_jm,n - sym^i_jn,m + sym^a_jm sym^i_an - sym^a_jn sym^i_am

are taken with respect to it.  The torsion-sensitive derivative variants
and the five-coefficient curvature family built from torsion corrections
live here as well.  All caches are computed eagerly at construction so the
value is immutable and freely shareable afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .expr import Expr
from .tensor import TensorField

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class CurvatureCoefficients:
    """Free coefficients (u, u2, v, v2, w) of the curvature family."""

    u: Fraction = Fraction(0)
    u2: Fraction = Fraction(0)
    v: Fraction = Fraction(0)
    v2: Fraction = Fraction(0)
    w: Fraction = Fraction(0)

    @staticmethod
    def of(u, u2, v, v2, w) -> "CurvatureCoefficients":
        return CurvatureCoefficients(
            Fraction(u), Fraction(u2), Fraction(v), Fraction(v2), Fraction(w)
        )

    def as_tuple(self) -> Tuple[Fraction, ...]:
        return (self.u, self.u2, self.v, self.v2, self.w)


class ConnectionSpace:
    __slots__ = ("dim", "coefficients", "sym", "torsion", "curvature")

    def __init__(self, coefficients: TensorField):
        if (coefficients.r, coefficients.s) != (1, 2):
            raise ValueError("connection coefficients must be a (1,2) tensor field")
        dim = coefficients.dim
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "sym", coefficients.sym_part(1, 2))
        object.__setattr__(self, "torsion", coefficients.antisym_part(1, 2))
        object.__setattr__(self, "curvature", _curvature_of_sym(self.sym))

    def __setattr__(self, name, value):
        raise AttributeError("ConnectionSpace is immutable")

    @staticmethod
    def flat(dim: int) -> "ConnectionSpace":
        return ConnectionSpace(TensorField.zeros(dim, 1, 2))

    def is_symmetric(self) -> bool:
        return self.torsion.is_zero()

    def associated(self) -> "ConnectionSpace":
        """The torsion-free space carrying only the symmetric part."""
        if self.is_symmetric():
            return self
        return ConnectionSpace(self.sym)

    def sym_trace(self) -> TensorField:
        """(0,1) tensor t_j = sym^a_ja (equal to sym^a_aj by symmetry)."""
        return self.sym.contract(0, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConnectionSpace):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"ConnectionSpace(dim={self.dim})"


def _curvature_of_sym(sym: TensorField) -> TensorField:
    dim = sym.dim

    def fn(idx):
        i, j, m, n = idx
        total = sym[i, j, m].diff(n) - sym[i, j, n].diff(m)
        for a in range(dim):
            total = total + sym[a, j, m] * sym[i, a, n] - sym[a, j, n] * sym[i, a, m]
        return total

    return TensorField.from_function(dim, 1, 3, fn)


def covariant_derivative(t: TensorField, space: ConnectionSpace) -> TensorField:
    """Covariant derivative with the associated (torsion-free) connection.

    One correction term per slot: +sym^i_ak for each upper slot, -sym^a_jk
    for each lower slot; the derivative index appears as a new final
    covariant slot.
    """
    if t.dim != space.dim:
        raise ValueError("tensor and connection live on different charts")
    dim = t.dim
    r, s = t.r, t.s
    sym = space.sym

    def fn(idx):
        base = idx[: r + s]
        k = idx[r + s]
        total = t[base].diff(k)
        for slot in range(r):
            for a in range(dim):
                replaced = base[:slot] + (a,) + base[slot + 1 :]
                total = total + sym[base[slot], a, k] * t[replaced]
        for slot in range(r, r + s):
            for a in range(dim):
                replaced = base[:slot] + (a,) + base[slot + 1 :]
                total = total - sym[a, base[slot], k] * t[replaced]
        return total

    return TensorField.from_function(dim, r, s + 1, fn)


# Index order of the correction factors for the four torsion-sensitive
# derivative variants of a (1,1) tensor: (upper correction, lower correction)
#   kind 1: L^i_ak a^a_j - L^a_jk a^i_a
#   kind 2: L^i_ka a^a_j - L^a_kj a^i_a
#   kind 3: L^i_ak a^a_j - L^a_kj a^i_a
#   kind 4: L^i_ka a^a_j - L^a_jk a^i_a
# Kinds 1-3 follow the conventional display; kind 4 completes the 2x2
# pattern of index orders (the usual fourth-kind convention).
_KIND_TABLE = {
    1: ("ak", "jk"),
    2: ("ka", "kj"),
    3: ("ak", "kj"),
    4: ("ka", "jk"),
}


def covariant_derivative_kind(
    t: TensorField, space: ConnectionSpace, kind: int
) -> TensorField:
    """One of the four torsion-sensitive derivatives of a (1,1) tensor."""
    if (t.r, t.s) != (1, 1):
        raise ValueError("the four derivative kinds are defined for (1,1) tensors")
    if t.dim != space.dim:
        raise ValueError("tensor and connection live on different charts")
    if kind not in _KIND_TABLE:
        raise ValueError("kind must be 1, 2, 3 or 4")
    upper_order, lower_order = _KIND_TABLE[kind]
    dim = t.dim
    full = space.coefficients

    def fn(idx):
        i, j, k = idx
        total = t[i, j].diff(k)
        for a in range(dim):
            lu = full[i, a, k] if upper_order == "ak" else full[i, k, a]
            ll = full[a, j, k] if lower_order == "jk" else full[a, k, j]
            total = total + lu * t[a, j] - ll * t[i, a]
        return total

    return TensorField.from_function(dim, 1, 2, fn)


def curvature_R(space: ConnectionSpace) -> TensorField:
    """Curvature tensor of the associated torsion-free connection."""
    return space.curvature


def ricci(space: ConnectionSpace) -> TensorField:
    """Ricci trace R_jn = R^a_jan (upper slot against the first pair slot)."""
    return space.curvature.contract(0, 1)


def ricci_last(space: ConnectionSpace) -> TensorField:
    """Opposite trace R_jn = R^a_jna; equals -ricci by pair antisymmetry."""
    return space.curvature.contract(0, 2)


def curvature_family_K(
    space: ConnectionSpace, coeffs: CurvatureCoefficients
) -> TensorField:
    """Curvature family member

    K^i_jmn = R^i_jmn + u T^i_jm|n + u2 T^i_jn|m
              + v T^a_jm T^i_an + v2 T^a_jn T^i_am + w T^a_mn T^i_aj

    with T the torsion tensor and | the associated-connection derivative.
    """
    dim = space.dim
    tor = space.torsion
    result = space.curvature
    u, u2, v, v2, w = coeffs.as_tuple()
    if u or u2:
        dtor = covariant_derivative(tor, space)  # slots (i; j, m, n)
        if u:
            result = result + dtor.scale(u)
        if u2:
            result = result + dtor.transpose(2, 3).scale(u2)
    if v or v2 or w:

        def build(fn):
            return TensorField.from_function(dim, 1, 3, fn)

        if v:
            result = result + build(
                lambda idx: _sum3(dim, lambda a: tor[a, idx[1], idx[2]] * tor[idx[0], a, idx[3]])
            ).scale(v)
        if v2:
            result = result + build(
                lambda idx: _sum3(dim, lambda a: tor[a, idx[1], idx[3]] * tor[idx[0], a, idx[2]])
            ).scale(v2)
        if w:
            result = result + build(
                lambda idx: _sum3(dim, lambda a: tor[a, idx[2], idx[3]] * tor[idx[0], a, idx[1]])
            ).scale(w)
    return result


def _sum3(dim: int, fn) -> Expr:
    total = None
    for a in range(dim):
        term = fn(a)
        total = term if total is None else total + term
    return total
