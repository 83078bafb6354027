"""Mapping specifications and construction of the deformed target space.

A mapping between two connection spaces on the same chart is described by
its deformation tensor P^i_jk = target.L^i_jk - source.L^i_jk.  Four
specification kinds are supported:

  * EquitorsionGeodesic: P = psi_j d^i_k + psi_k d^i_j for a 1-form psi
    (torsion is untouched).
  * SecondClass: P = d^i_j rho_k + d^i_k rho_j + sigma^i_jk with sigma
    symmetric; torsion is kept equal to the source torsion.
  * General: symmetric deformation given outright, torsion deformation
    given by the pair (tau, tau_bar): P gains tau_bar - tau.
  * AlmostGeodesicPi1: the symmetric deformation D is stored explicitly
    together with a symmetric tensor a and must satisfy

      D^i_nm|j + D^i_jm|n + D^a_jm D^i_an + D^a_nm D^i_aj
          = d^i_j a_mn + d^i_n a_mj

    exactly (checked when the instance is built; solving this system is
    out of scope here, only validating and exploiting it).

Every constructed instance records the deformation and its antisymmetric
part xi; the mapping is equitorsion exactly when xi vanishes.

For invariance checking each instance exposes two `MappingSide` views.  A
side bundles the space with the side's own mapping-class data: the target
side belongs to the inverse mapping, whose deformation is -P, whose
class-2 object carries the spec data (the source baseline is zero), whose
torsion datum is tau_bar, and whose almost-geodesic tensor is -a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .connection import ConnectionSpace, covariant_derivative
from .expr import Expr
from .tensor import TensorField, kronecker_delta

_HALF = Fraction(1, 2)


class MappingSpecError(Exception):
    """A mapping specification violates its declared constraints."""


def _require_valence(t: TensorField, r: int, s: int, name: str) -> None:
    if (t.r, t.s) != (r, s):
        raise MappingSpecError(f"{name} must be a ({r},{s}) tensor field")


@dataclass(frozen=True)
class EquitorsionGeodesic:
    psi: TensorField

    kind = "geodesic"

    def __post_init__(self):
        _require_valence(self.psi, 0, 1, "psi")


@dataclass(frozen=True)
class SecondClass:
    rho: TensorField
    sigma: TensorField

    kind = "second-class"

    def __post_init__(self):
        _require_valence(self.rho, 0, 1, "rho")
        _require_valence(self.sigma, 1, 2, "sigma")
        if not self.sigma.is_symmetric_in(1, 2):
            raise MappingSpecError("sigma must be symmetric in its lower indices")


@dataclass(frozen=True)
class General:
    sym_deformation: TensorField
    tau: TensorField
    tau_bar: TensorField

    kind = "general"

    def __post_init__(self):
        _require_valence(self.sym_deformation, 1, 2, "sym_deformation")
        _require_valence(self.tau, 1, 2, "tau")
        _require_valence(self.tau_bar, 1, 2, "tau_bar")
        if not self.sym_deformation.is_symmetric_in(1, 2):
            raise MappingSpecError("sym_deformation must be symmetric")
        if not self.tau.is_antisymmetric_in(1, 2):
            raise MappingSpecError("tau must be antisymmetric")
        if not self.tau_bar.is_antisymmetric_in(1, 2):
            raise MappingSpecError("tau_bar must be antisymmetric")


@dataclass(frozen=True)
class AlmostGeodesicPi1:
    a: TensorField
    deformation: TensorField

    kind = "almost-geodesic-pi1"

    def __post_init__(self):
        _require_valence(self.a, 0, 2, "a")
        _require_valence(self.deformation, 1, 2, "deformation")
        if not self.a.is_symmetric_in(0, 1):
            raise MappingSpecError("a must be symmetric")
        if not self.deformation.is_symmetric_in(1, 2):
            raise MappingSpecError("deformation must be symmetric")


MappingSpec = Union[EquitorsionGeodesic, SecondClass, General, AlmostGeodesicPi1]


def geodesic_deformation(psi: TensorField) -> TensorField:
    """psi_j d^i_k + psi_k d^i_j."""
    dim = psi.dim
    zero = Expr.const(dim, 0)

    def fn(idx):
        i, j, k = idx
        total = zero
        if i == k:
            total = total + psi[(j,)]
        if i == j:
            total = total + psi[(k,)]
        return total

    return TensorField.from_function(dim, 1, 2, fn)


def second_class_deformation(rho: TensorField, sigma: TensorField) -> TensorField:
    """d^i_j rho_k + d^i_k rho_j + sigma^i_jk."""
    dim = rho.dim

    def fn(idx):
        i, j, k = idx
        total = sigma[i, j, k]
        if i == j:
            total = total + rho[(k,)]
        if i == k:
            total = total + rho[(j,)]
        return total

    return TensorField.from_function(dim, 1, 2, fn)


@dataclass(frozen=True)
class MappingInstance:
    source: ConnectionSpace
    spec: MappingSpec
    target: ConnectionSpace
    deformation: TensorField
    xi: TensorField

    @property
    def is_equitorsion(self) -> bool:
        return self.xi.is_zero()

    @property
    def deformation_sym(self) -> TensorField:
        return self.deformation.sym_part(1, 2)

    def side(self, which: str) -> "MappingSide":
        if which not in ("source", "target"):
            raise ValueError("side must be 'source' or 'target'")
        return MappingSide(self, which == "source")


def deformation_tensor(source: ConnectionSpace, target: ConnectionSpace) -> TensorField:
    """P^i_jk = target.L^i_jk - source.L^i_jk."""
    if source.dim != target.dim:
        raise ValueError("spaces live on different charts")
    return target.coefficients - source.coefficients


def apply_mapping(source: ConnectionSpace, spec: MappingSpec) -> MappingInstance:
    """Build the deformed space and the mapping instance for a spec."""
    if isinstance(spec, EquitorsionGeodesic):
        deformation = geodesic_deformation(spec.psi)
    elif isinstance(spec, SecondClass):
        deformation = second_class_deformation(spec.rho, spec.sigma)
    elif isinstance(spec, General):
        deformation = spec.sym_deformation + (spec.tau_bar - spec.tau)
    elif isinstance(spec, AlmostGeodesicPi1):
        deformation = spec.deformation
        _validate_pi1(source, spec)
    else:
        raise MappingSpecError(f"unknown mapping spec {type(spec).__name__}")
    if deformation.dim != source.dim:
        raise MappingSpecError("spec dimension does not match the source space")
    target = ConnectionSpace(source.coefficients + deformation)
    xi = deformation.antisym_part(1, 2)
    return MappingInstance(source, spec, target, deformation, xi)


def _validate_pi1(source: ConnectionSpace, spec: AlmostGeodesicPi1) -> None:
    d = spec.deformation
    a = spec.a
    dim = source.dim
    cd = covariant_derivative(d, source)  # cd[i,p,q,r] = D^i_pq|r

    def lhs(idx):
        i, j, m, n = idx
        total = cd[i, n, m, j] + cd[i, j, m, n]
        for al in range(dim):
            total = total + d[al, j, m] * d[i, al, n] + d[al, n, m] * d[i, al, j]
        return total

    def rhs(idx):
        i, j, m, n = idx
        total = Expr.const(dim, 0)
        if i == j:
            total = total + a[m, n]
        if i == n:
            total = total + a[m, j]
        return total

    for idx in TensorField.zeros(dim, 1, 3).indices():
        if not (lhs(idx) - rhs(idx)).is_zero():
            raise MappingSpecError(
                "deformation does not satisfy the almost-geodesic condition "
                f"at component {tuple(i + 1 for i in idx)}"
            )


def omega_geodesic(space: ConnectionSpace) -> TensorField:
    """Class-2 object of a geodesic mapping, built from the trace:

    (1/(N+1)) (d^i_j t_k + d^i_k t_j)  with  t_j = sym^a_ja.
    """
    dim = space.dim
    t = space.sym_trace()
    q = Fraction(1, dim + 1)
    zero = Expr.const(dim, 0)

    def fn(idx):
        i, j, k = idx
        total = zero
        if i == j:
            total = total + t[(k,)]
        if i == k:
            total = total + t[(j,)]
        return total.scale(q)

    return TensorField.from_function(dim, 1, 2, fn)


def omega_object(
    p: int,
    space: ConnectionSpace,
    omega: Optional[TensorField] = None,
    p_underline: Optional[TensorField] = None,
) -> TensorField:
    """The class-p symmetric object entering the invariants.

    p=1: the symmetric part of the connection; p=2: the supplied omega;
    p=3: -(1/2) of the (side-local) symmetric deformation, which requires
    a mapping instance to exist.
    """
    if p == 1:
        return space.sym
    if p == 2:
        if omega is None:
            raise ValueError("class 2 requires the omega datum")
        return omega
    if p == 3:
        if p_underline is None:
            raise ValueError("class 3 requires the symmetric deformation of a mapping instance")
        return p_underline.scale(Fraction(-1, 2))
    raise ValueError("class must be 1, 2 or 3")


def psi_from_connections(source: ConnectionSpace, target: ConnectionSpace) -> TensorField:
    """Recover the geodesic 1-form: (1/(N+1)) (target trace - source trace)."""
    if source.dim != target.dim:
        raise ValueError("spaces live on different charts")
    q = Fraction(1, source.dim + 1)
    return (target.sym_trace() - source.sym_trace()).scale(q)


def geodesic_residual(source: ConnectionSpace, target: ConnectionSpace) -> TensorField:
    """P_sym - (psi d + d psi) for the recovered psi; zero iff geodesic."""
    psi = psi_from_connections(source, target)
    p_sym = deformation_tensor(source, target).sym_part(1, 2)
    return p_sym - geodesic_deformation(psi)


class MappingSide:
    """One side of a mapping instance, with its own class data.

    The target side describes the inverse mapping: deformation -P, class-2
    object carrying the spec data, torsion datum tau_bar, almost-geodesic
    tensor -a.
    """

    __slots__ = ("instance", "is_source", "space")

    def __init__(self, instance: MappingInstance, is_source: bool):
        object.__setattr__(self, "instance", instance)
        object.__setattr__(self, "is_source", is_source)
        object.__setattr__(
            self, "space", instance.source if is_source else instance.target
        )

    def __setattr__(self, name, value):
        raise AttributeError("MappingSide is immutable")

    @property
    def deformation_sym(self) -> TensorField:
        own = self.instance.deformation_sym
        return own if self.is_source else -own

    def tau(self) -> TensorField:
        spec = self.instance.spec
        if isinstance(spec, General):
            return spec.tau if self.is_source else spec.tau_bar
        return TensorField.zeros(self.space.dim, 1, 2)

    def omega2(self) -> Optional[TensorField]:
        """The side's class-2 object, or None when the kind defines none."""
        spec = self.instance.spec
        if isinstance(spec, EquitorsionGeodesic):
            return omega_geodesic(self.space)
        if isinstance(spec, SecondClass):
            if self.is_source:
                return TensorField.zeros(self.space.dim, 1, 2)
            return second_class_deformation(spec.rho, spec.sigma)
        if isinstance(spec, General):
            if self.is_source:
                return TensorField.zeros(self.space.dim, 1, 2)
            return spec.sym_deformation
        return None

    def sigma(self) -> Optional[TensorField]:
        """The sigma datum of the side's class-2 split, when defined."""
        spec = self.instance.spec
        if isinstance(spec, EquitorsionGeodesic):
            # trace-built class-2 object is pure rho-form, sigma = 0
            return TensorField.zeros(self.space.dim, 1, 2)
        if isinstance(spec, SecondClass):
            return TensorField.zeros(self.space.dim, 1, 2) if self.is_source else spec.sigma
        if isinstance(spec, General):
            return TensorField.zeros(self.space.dim, 1, 2) if self.is_source else spec.sym_deformation
        return None

    def a(self) -> Optional[TensorField]:
        spec = self.instance.spec
        if isinstance(spec, AlmostGeodesicPi1):
            return spec.a if self.is_source else -spec.a
        return None

    def omega(self, p: int) -> TensorField:
        return omega_object(
            p, self.space, omega=self.omega2(), p_underline=self.deformation_sym
        )
