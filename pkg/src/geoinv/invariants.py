"""Thomas-type and Weyl-type invariants of connection mappings.

Naming used throughout (all tensors live on one chart of dimension N):

  sym, tor      symmetric part / torsion of the connection coefficients
  omega_p       the class-p symmetric object: class 1 is sym, class 2 is a
                supplied symmetric (1,2) datum, class 3 is -(1/2) of the
                symmetric deformation of a mapping instance
  that          the antisymmetric base invariant  tor^i_jk - tau^i_jk
  R             curvature of the associated connection
  ric2          the trace  ric2_jn = R^a_jna  (R^a_jan = -ric2_jn)

The Thomas-type objects are (1,2)-valent:

  basic     class 1: 0,  class 2: sym - omega,  class 3: sym + P_sym/2
  antisym   tor - tau
  general   class 1: tor - tau
            class 2: L - omega - tau
            class 3: L + P_sym/2 - tau
  derived second class (sigma symmetric, trace-free construction):
            sym - sigma - (1/(N+1)) ((sym - sigma) traces spread on deltas)

The Weyl-type objects are (1,3)-valent and derive from one engine,

  W(omega) = R - omega|n + omega|m + omega.omega - omega.omega,

where | is the associated covariant derivative; class 3 drops the
quadratic terms (they are invariants on their own).  The general family
adds torsion corrections with class-selected omega factors and five free
coefficients; in the equitorsion case with trivial tau datum the family
reduces to the same expression with `that` replaced by the torsion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, Optional, Tuple

from .connection import (
    ConnectionSpace,
    CurvatureCoefficients,
    covariant_derivative,
)
from .expr import Expr
from .tensor import TensorField
from .mappings import omega_geodesic, omega_object

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class ClassSelector:
    """Family selector: main class p and two index triples over {1, 2}."""

    p: int
    p1: Tuple[int, int, int]
    p2: Tuple[int, int, int]

    def __post_init__(self):
        if self.p not in (1, 2, 3):
            raise ValueError("p must be 1, 2 or 3")
        for triple in (self.p1, self.p2):
            if len(triple) != 3 or any(x not in (1, 2) for x in triple):
                raise ValueError("selector triples must have three entries in {1, 2}")

    def label(self) -> str:
        return (
            f"p={self.p},"
            f"p1={''.join(map(str, self.p1))},"
            f"p2={''.join(map(str, self.p2))}"
        )


def all_selectors(p: int) -> Iterator[ClassSelector]:
    """All 64 selectors with fixed main class p."""
    for p1 in itertools.product((1, 2), repeat=3):
        for p2 in itertools.product((1, 2), repeat=3):
            yield ClassSelector(p, p1, p2)


@dataclass(frozen=True)
class InvariantResult:
    kind: str
    valence: Tuple[int, int]
    tensor: TensorField
    provenance: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if (self.tensor.r, self.tensor.s) != self.valence:
            raise ValueError("tensor valence does not match the declared valence")


def _result(kind: str, tensor: TensorField, **provenance) -> InvariantResult:
    return InvariantResult(kind, (tensor.r, tensor.s), tensor, dict(provenance))


# ---------------------------------------------------------------------------
# Thomas type
# ---------------------------------------------------------------------------


def thomas_basic(
    p: int,
    space: ConnectionSpace,
    omega: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
) -> InvariantResult:
    """Basic class-p associated invariant, sym - omega_p."""
    om = omega_object(p, space, omega=omega, p_underline=p_underline)
    return _result("thomas-basic", space.sym - om, p=p)


def thomas_geodesic(space: ConnectionSpace) -> InvariantResult:
    """Projective parameter: sym^i_jk - (d^i_j t_k + d^i_k t_j)/(N+1)."""
    dim = space.dim
    sym = space.sym
    t = space.sym_trace()
    q = Fraction(1, dim + 1)

    def fn(idx):
        i, j, k = idx
        total = sym[i, j, k]
        if i == j:
            total = total - t[(k,)].scale(q)
        if i == k:
            total = total - t[(j,)].scale(q)
        return total

    return _result("thomas-geodesic", TensorField.from_function(dim, 1, 2, fn))


def thomas_derived_second(space: ConnectionSpace, sigma: TensorField) -> InvariantResult:
    """Derived second-class Thomas invariant for omega = d.rho + d.rho + sigma.

    The rho part drops out through the trace, leaving a trace-free
    combination of sym - sigma.
    """
    if not sigma.is_symmetric_in(1, 2):
        raise ValueError("sigma must be symmetric in its lower indices")
    dim = space.dim
    base = space.sym - sigma
    t = base.contract(0, 1)  # (sym - sigma)^a_ja
    q = Fraction(1, dim + 1)

    def fn(idx):
        i, j, k = idx
        total = base[i, j, k]
        if i == k:
            total = total - t[(j,)].scale(q)
        if i == j:
            total = total - t[(k,)].scale(q)
        return total

    return _result("thomas-derived-second", TensorField.from_function(dim, 1, 2, fn))


def thomas_antisym(space: ConnectionSpace, tau: TensorField) -> InvariantResult:
    """Antisymmetric invariant tor - tau."""
    if not tau.is_antisymmetric_in(1, 2):
        raise ValueError("tau must be antisymmetric in its lower indices")
    return _result("thomas-antisym", space.torsion - tau)


def thomas_general(
    p: int,
    space: ConnectionSpace,
    omega: Optional[TensorField] = None,
    tau: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
) -> InvariantResult:
    """General class-p Thomas invariant (torsion-aware)."""
    if tau is None:
        tau = TensorField.zeros(space.dim, 1, 2)
    if p == 1:
        tensor = space.torsion - tau
    elif p == 2:
        if omega is None:
            raise ValueError("class 2 requires the omega datum")
        tensor = space.coefficients - omega - tau
    elif p == 3:
        if p_underline is None:
            raise ValueError("class 3 requires the symmetric deformation of a mapping instance")
        tensor = space.coefficients + p_underline.scale(_HALF) - tau
    else:
        raise ValueError("class must be 1, 2 or 3")
    return _result("thomas-general", tensor, p=p)


# ---------------------------------------------------------------------------
# Weyl type
# ---------------------------------------------------------------------------


def _weyl_engine(
    space: ConnectionSpace, omega: TensorField, include_quadratic: bool
) -> TensorField:
    """R - omega^i_jm|n + omega^i_jn|m (+ omega.omega antisymmetrized)."""
    dim = space.dim
    cd = covariant_derivative(omega, space)  # cd[i,j,m,n] = omega^i_jm|n
    out = space.curvature - cd + cd.transpose(2, 3)
    if include_quadratic:

        def quad(idx):
            i, j, m, n = idx
            total = None
            for a in range(dim):
                term = omega[a, j, m] * omega[i, a, n] - omega[a, j, n] * omega[i, a, m]
                total = term if total is None else total + term
            return total

        out = out + TensorField.from_function(dim, 1, 3, quad)
    return out


def weyl_basic(
    p: int,
    space: ConnectionSpace,
    omega: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
    full_quadratic: bool = False,
) -> InvariantResult:
    """Basic class-p Weyl invariant.

    For class 3 the quadratic terms are dropped (they are invariant by
    themselves); pass full_quadratic=True to keep them.
    """
    om = omega_object(p, space, omega=omega, p_underline=p_underline)
    include_quadratic = full_quadratic or p != 3
    return _result(
        "weyl-basic", _weyl_engine(space, om, include_quadratic), p=p
    )


def weyl_derived_second(space: ConnectionSpace, sigma: TensorField) -> InvariantResult:
    """Derived second-class Weyl invariant (rho eliminated through traces).

    Built from the curvature, the trace ric2_jn = R^a_jna, and sigma with
    its associated covariant derivative; exactly invariant under mappings
    whose symmetric deformation is d.rho + d.rho + delta-sigma.
    """
    if not sigma.is_symmetric_in(1, 2):
        raise ValueError("sigma must be symmetric in its lower indices")
    dim = space.dim
    R = space.curvature
    ric2 = R.contract(0, 2)  # ric2[j,n] = R^a_jna
    A = covariant_derivative(sigma, space)  # A[i,j,m,n] = sigma^i_jm|n
    q1 = Fraction(1, dim + 1)
    q2 = Fraction(1, dim - 1)

    def alt(t: TensorField) -> TensorField:
        return t - t.transpose(0, 1)

    ric_alt = alt(ric2)
    tr1A = TensorField.from_function(
        dim, 0, 2, lambda idx: _sum(dim, lambda a: A[a, a, idx[0], idx[1]])
    )
    s_alt = alt(tr1A)  # sigma^a_a[m|n]
    t1 = TensorField.from_function(
        dim, 0, 2, lambda idx: _sum(dim, lambda a: A[a, idx[0], idx[1], a])
    )  # sigma^a_jn|a
    t2 = TensorField.from_function(
        dim, 0, 2, lambda idx: _sum(dim, lambda a: A[a, idx[0], a, idx[1]])
    )  # sigma^a_ja|n
    strace = sigma.contract(0, 1)  # sigma^b_ab
    u1 = TensorField.from_function(
        dim, 0, 2, lambda idx: _sum(dim, lambda a: sigma[a, idx[0], idx[1]] * strace[(a,)])
    )
    v = TensorField.from_function(
        dim,
        0,
        2,
        lambda idx: _sum2(
            dim, lambda a, b: sigma[a, idx[0], b] * sigma[b, a, idx[1]]
        ),
    )
    # correction carried by each delta slot
    u_corr = (
        -ric2 + (ric_alt + s_alt).scale(q1) + t1 - t2 - u1 + v
    )

    def quad(idx):
        i, j, m, n = idx
        return _sum(
            dim,
            lambda a: sigma[a, j, m] * sigma[i, a, n] - sigma[a, j, n] * sigma[i, a, m],
        )

    def fn(idx):
        i, j, m, n = idx
        total = R[i, j, m, n] - A[i, j, m, n] + A[i, j, n, m] + quad(idx)
        if i == j:
            total = total + (ric_alt[m, n] + s_alt[m, n]).scale(q1)
        if i == n:
            total = total + u_corr[j, m].scale(q2)
        if i == m:
            total = total - u_corr[j, n].scale(q2)
        return total

    return _result("weyl-derived-second", TensorField.from_function(dim, 1, 3, fn))


def weyl_family(
    selector: ClassSelector,
    coeffs: CurvatureCoefficients,
    space: ConnectionSpace,
    omega2: Optional[TensorField] = None,
    tau: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
) -> InvariantResult:
    """Family member for a class selector and coefficients (u,u2,v,v2,w).

    Decomposed form: the basic class-p Weyl invariant plus torsion
    corrections built from that = tor - tau, with every correction factor
    omega chosen by the selector among class 1 (sym) and class 2 (the
    omega2 datum).
    """
    dim = space.dim
    if tau is None:
        tau = TensorField.zeros(dim, 1, 2)
    that = space.torsion - tau
    om: Dict[int, TensorField] = {1: space.sym}
    if 2 in selector.p1 + selector.p2 or selector.p == 2:
        if omega2 is None:
            raise ValueError("selector references class 2 but no omega datum given")
        om[2] = omega2
    head_omega = omega_object(
        selector.p, space, omega=omega2, p_underline=p_underline
    )
    out = _weyl_engine(space, head_omega, include_quadratic=True)
    u, u2, v, v2, w = coeffs.as_tuple()
    cd_that = covariant_derivative(that, space)
    if u:
        p11, p12, _ = selector.p1

        def u_term(idx):
            i, j, m, n = idx
            total = cd_that[i, j, m, n]
            for a in range(dim):
                total = (
                    total
                    - om[p11][i, a, n] * that[a, j, m]
                    + om[p12][a, j, n] * that[i, a, m]
                )
            return total

        out = out + TensorField.from_function(dim, 1, 3, u_term).scale(u)
    if u2:
        p21, p22, _ = selector.p2

        def u2_term(idx):
            i, j, m, n = idx
            total = cd_that[i, j, n, m]
            for a in range(dim):
                total = (
                    total
                    - om[p21][i, a, m] * that[a, j, n]
                    + om[p22][a, j, m] * that[i, a, n]
                )
            return total

        out = out + TensorField.from_function(dim, 1, 3, u2_term).scale(u2)
    if u or u2:
        p13 = selector.p1[2]
        p23 = selector.p2[2]

        def mn_term(idx):
            i, j, m, n = idx
            total = None
            for a in range(dim):
                weight = om[p13][a, m, n].scale(u) + om[p23][a, m, n].scale(u2)
                term = weight * that[i, j, a]
                total = term if total is None else total + term
            return total

        out = out + TensorField.from_function(dim, 1, 3, mn_term)
    if v:
        out = out + TensorField.from_function(
            dim, 1, 3,
            lambda idx: _sum(dim, lambda a: that[a, idx[1], idx[2]] * that[idx[0], a, idx[3]]),
        ).scale(v)
    if v2:
        out = out + TensorField.from_function(
            dim, 1, 3,
            lambda idx: _sum(dim, lambda a: that[a, idx[1], idx[3]] * that[idx[0], a, idx[2]]),
        ).scale(v2)
    if w:
        out = out + TensorField.from_function(
            dim, 1, 3,
            lambda idx: _sum(dim, lambda a: that[a, idx[2], idx[3]] * that[idx[0], a, idx[1]]),
        ).scale(w)
    return _result(
        "weyl-family",
        out,
        selector=selector.label(),
        coefficients=tuple(str(c) for c in coeffs.as_tuple()),
    )


def weyl_family_equitorsion(
    selector: ClassSelector,
    coeffs: CurvatureCoefficients,
    space: ConnectionSpace,
    omega2: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
) -> InvariantResult:
    """Reduced family form for equitorsion mappings with trivial tau datum.

    Independent transcription with the torsion itself in place of `that`;
    used to cross-check the general decomposition.
    """
    dim = space.dim
    tor = space.torsion
    om: Dict[int, TensorField] = {1: space.sym}
    if omega2 is not None:
        om[2] = omega2
    for k in selector.p1 + selector.p2:
        if k == 2 and 2 not in om:
            raise ValueError("selector references class 2 but no omega datum given")
    head_omega = omega_object(selector.p, space, omega=omega2, p_underline=p_underline)
    u, u2, v, v2, w = coeffs.as_tuple()
    cd_tor = covariant_derivative(tor, space)
    cd_head = covariant_derivative(head_omega, space)
    p11, p12, p13 = selector.p1
    p21, p22, p23 = selector.p2

    def fn(idx):
        i, j, m, n = idx
        total = (
            space.curvature[i, j, m, n]
            - cd_head[i, j, m, n]
            + cd_head[i, j, n, m]
        )
        for a in range(dim):
            total = (
                total
                + head_omega[a, j, m] * head_omega[i, a, n]
                - head_omega[a, j, n] * head_omega[i, a, m]
            )
        total = total + cd_tor[i, j, m, n].scale(u) + cd_tor[i, j, n, m].scale(u2)
        for a in range(dim):
            total = total + (
                om[p13][a, m, n].scale(u) + om[p23][a, m, n].scale(u2)
            ) * tor[i, j, a]
            total = total - (om[p11][i, a, n] * tor[a, j, m]).scale(u)
            total = total + (om[p12][a, j, n] * tor[i, a, m]).scale(u)
            total = total - (om[p21][i, a, m] * tor[a, j, n]).scale(u2)
            total = total + (om[p22][a, j, m] * tor[i, a, n]).scale(u2)
            total = total + (tor[a, j, m] * tor[i, a, n]).scale(v)
            total = total + (tor[a, j, n] * tor[i, a, m]).scale(v2)
            total = total + (tor[a, m, n] * tor[i, a, j]).scale(w)
        return total

    return _result(
        "weyl-family-equitorsion",
        TensorField.from_function(dim, 1, 3, fn),
        selector=selector.label(),
        coefficients=tuple(str(c) for c in coeffs.as_tuple()),
    )


def weyl_almost_geodesic(space: ConnectionSpace, a: TensorField) -> InvariantResult:
    """Basic Weyl-type invariant of an almost geodesic mapping:

        R^i_jmn + (1/2) d^i_n a_jm - (1/2) d^i_m a_jn.

    The orientation of the a-terms follows the class-3 derivation; see the
    README note on the half-factor and orientation conventions.
    """
    if not a.is_symmetric_in(0, 1):
        raise ValueError("a must be symmetric")
    dim = space.dim
    R = space.curvature

    def fn(idx):
        i, j, m, n = idx
        total = R[i, j, m, n]
        if i == n:
            total = total + a[j, m].scale(_HALF)
        if i == m:
            total = total - a[j, n].scale(_HALF)
        return total

    return _result("weyl-almost-geodesic", TensorField.from_function(dim, 1, 3, fn))


def weyl_almost_geodesic_deformation(
    space: ConnectionSpace, deformation_sym: TensorField
) -> InvariantResult:
    """The same invariant computed from a side's symmetric deformation D:

        R + (1/2)(D^i_jm|n - D^i_jn|m)
          + (1/2)(D^a_jm D^i_an - D^a_jn D^i_am).

    On a side whose deformation satisfies the almost-geodesic condition
    with tensor a this equals the delta/a display above.
    """
    dim = space.dim
    cd = covariant_derivative(deformation_sym, space)
    d = deformation_sym

    def fn(idx):
        i, j, m, n = idx
        total = space.curvature[i, j, m, n] + (cd[i, j, m, n] - cd[i, j, n, m]).scale(_HALF)
        for a in range(dim):
            total = total + (d[a, j, m] * d[i, a, n] - d[a, j, n] * d[i, a, m]).scale(_HALF)
        return total

    return _result(
        "weyl-almost-geodesic", TensorField.from_function(dim, 1, 3, fn)
    )


def _sum(dim: int, fn) -> Expr:
    total = None
    for a in range(dim):
        term = fn(a)
        total = term if total is None else total + term
    return total


def _sum2(dim: int, fn) -> Expr:
    total = None
    for a in range(dim):
        for b in range(dim):
            term = fn(a, b)
            total = term if total is None else total + term
    return total
