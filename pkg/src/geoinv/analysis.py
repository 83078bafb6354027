"""Invariance verification and the family coefficient-matrix rank check.

Verification is exact: the requested invariant is computed symbolically on
the source and on the target of a mapping instance, each side using only
its own space and its own mapping-class data, and the two tensors are
compared componentwise at exact rational sample points.  A verdict of
exact-equal means every discrepancy is the rational zero; there are no
tolerances anywhere.

Sample points are drawn from a seeded generator over rationals with
numerator and denominator in 1..10.  Points where any involved component
has a pole are skipped and noted.

The coefficient matrix enumerates the 64 family selectors (two triples
over {1,2}); each row lists the exact coefficient of every distinct term
shape of the decomposed family expression.  The distinct-shape basis has
16 columns: six selector-independent shapes (the head invariant, two
that-derivative shapes, three that.that shapes) and ten cross shapes
(sym.that and omega.that in five index patterns, with the two m,n-trace
patterns carrying combined u/u2 weights).  Its exact rank over Q is 6 for
any coefficients with u != 0 != u2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .connection import ConnectionSpace, CurvatureCoefficients
from .expr import Expr, PoleError
from .invariants import (
    ClassSelector,
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
from .mappings import (
    AlmostGeodesicPi1,
    EquitorsionGeodesic,
    General,
    MappingInstance,
    MappingSide,
    SecondClass,
)
from .tensor import TensorField

DEFAULT_POINTS = 5
DEFAULT_SEED = 1201
DEFAULT_FAMILY_COEFFS = CurvatureCoefficients.of(1, 2, 3, 5, 7)

Point = Tuple[Fraction, ...]


@dataclass(frozen=True)
class InvariantRequest:
    """One invariant to verify, with its class/selector/coefficient data."""

    id: str
    p: Optional[int] = None
    selector: Optional[ClassSelector] = None
    coeffs: Optional[CurvatureCoefficients] = None

    def label(self) -> str:
        if self.selector is not None:
            return f"{self.id}({self.selector.label()})"
        if self.p is not None:
            return f"{self.id}(p={self.p})"
        return self.id


@dataclass(frozen=True)
class Witness:
    component: Tuple[int, ...]  # 1-based indices
    point: Point
    source_value: Fraction
    target_value: Fraction


@dataclass(frozen=True)
class VerificationReport:
    request: str
    mapping_kind: str
    points: Tuple[Point, ...]
    discrepancies: Tuple[Fraction, ...]  # max abs per evaluated point
    skipped: Tuple[Tuple[Point, str], ...]
    verdict: str  # "exact-equal" or "violated"
    witness: Optional[Witness] = None

    @property
    def exact_equal(self) -> bool:
        return self.verdict == "exact-equal"


def sample_points(dim: int, count: int, seed: int) -> List[Point]:
    """Deterministic rational sample points, entries in [1/10, 10]."""
    rng = random.Random(seed)
    points = []
    seen = set()
    while len(points) < count:
        pt = tuple(
            Fraction(rng.randint(1, 10), rng.randint(1, 10)) for _ in range(dim)
        )
        if pt in seen:
            continue
        seen.add(pt)
        points.append(pt)
    return points


def compute_for_side(request: InvariantRequest, side: MappingSide) -> TensorField:
    """Evaluate the requested invariant from one side's own data."""
    space = side.space
    rid = request.id
    if rid == "thomas-basic":
        return thomas_basic(
            request.p, space, omega=side.omega2(), p_underline=side.deformation_sym
        ).tensor
    if rid == "thomas-geodesic":
        return thomas_geodesic(space).tensor
    if rid == "weyl-basic":
        return weyl_basic(
            request.p, space, omega=side.omega2(), p_underline=side.deformation_sym
        ).tensor
    if rid == "thomas-derived-second":
        sigma = side.sigma()
        if sigma is None:
            raise ValueError(f"{rid} needs a sigma datum for this mapping kind")
        return thomas_derived_second(space, sigma).tensor
    if rid == "weyl-derived-second":
        sigma = side.sigma()
        if sigma is None:
            raise ValueError(f"{rid} needs a sigma datum for this mapping kind")
        return weyl_derived_second(space, sigma).tensor
    if rid == "thomas-antisym":
        return thomas_antisym(space, side.tau()).tensor
    if rid == "thomas-general":
        return thomas_general(
            request.p,
            space,
            omega=side.omega2(),
            tau=side.tau(),
            p_underline=side.deformation_sym,
        ).tensor
    if rid == "weyl-family":
        return weyl_family(
            request.selector,
            request.coeffs or DEFAULT_FAMILY_COEFFS,
            space,
            omega2=side.omega2(),
            tau=side.tau(),
            p_underline=side.deformation_sym,
        ).tensor
    if rid == "weyl-almost-geodesic":
        a = side.a()
        if a is None:
            raise ValueError(f"{rid} applies to almost-geodesic mappings only")
        if side.is_source:
            return weyl_almost_geodesic(space, a).tensor
        # the inverse mapping need not satisfy the almost-geodesic
        # condition, so the target side evaluates the deformation form
        return weyl_almost_geodesic_deformation(space, side.deformation_sym).tensor
    raise ValueError(f"unknown invariant id {rid!r}")


def invariance_check(
    instance: MappingInstance,
    request: InvariantRequest,
    points: Sequence[Point],
) -> VerificationReport:
    """Compare the invariant on both sides at exact rational points."""
    source = compute_for_side(request, instance.side("source"))
    target = compute_for_side(request, instance.side("target"))
    evaluated: List[Point] = []
    discrepancies: List[Fraction] = []
    skipped: List[Tuple[Point, str]] = []
    witness: Optional[Witness] = None
    worst = Fraction(0)
    for pt in points:
        try:
            sv = source.eval_at(pt)
            tv = target.eval_at(pt)
        except PoleError as exc:
            skipped.append((tuple(pt), f"pole: {exc}"))
            continue
        evaluated.append(tuple(pt))
        max_diff = Fraction(0)
        for flat, (a, b) in enumerate(zip(sv, tv)):
            diff = abs(a - b)
            if diff > max_diff:
                max_diff = diff
            if diff != 0 and (witness is None or diff > worst):
                worst = diff
                witness = Witness(_unflatten(source, flat), tuple(pt), a, b)
        discrepancies.append(max_diff)
    if not evaluated:
        raise PoleError("all sample points hit poles of the involved expressions")
    verdict = "exact-equal" if all(d == 0 for d in discrepancies) else "violated"
    return VerificationReport(
        request=request.label(),
        mapping_kind=instance.spec.kind,
        points=tuple(evaluated),
        discrepancies=tuple(discrepancies),
        skipped=tuple(skipped),
        verdict=verdict,
        witness=witness if verdict == "violated" else None,
    )


def _unflatten(t: TensorField, flat: int) -> Tuple[int, ...]:
    idx = []
    for _ in range(t.r + t.s):
        idx.append(flat % t.dim)
        flat //= t.dim
    return tuple(i + 1 for i in reversed(idx))


_FAMILY_SAMPLE = (
    ((1, 1, 1), (1, 1, 1)),
    ((2, 2, 2), (2, 2, 2)),
    ((1, 2, 1), (2, 1, 2)),
    ((2, 1, 2), (1, 2, 1)),
)


def suite_for(
    instance: MappingInstance,
    *,
    all_family_selectors: bool = False,
    coeffs: CurvatureCoefficients = DEFAULT_FAMILY_COEFFS,
) -> Tuple[List[InvariantRequest], List[str]]:
    """Applicable invariance requests for a mapping kind, plus notes."""
    spec = instance.spec
    requests: List[InvariantRequest] = []
    notes: List[str] = []

    def family(p: int):
        if all_family_selectors:
            sels = list(all_selectors(p))
        else:
            sels = [ClassSelector(p, p1, p2) for p1, p2 in _FAMILY_SAMPLE]
            notes.append(
                f"weyl-family: sampled {len(sels)} of 64 selectors "
                "(use all selectors for the full sweep)"
            )
        for sel in sels:
            requests.append(
                InvariantRequest("weyl-family", selector=sel, coeffs=coeffs)
            )

    if isinstance(spec, (EquitorsionGeodesic, SecondClass, General)):
        for p in (1, 2, 3):
            requests.append(InvariantRequest("thomas-basic", p=p))
        if isinstance(spec, EquitorsionGeodesic):
            requests.append(InvariantRequest("thomas-geodesic"))
        for p in (1, 2, 3):
            requests.append(InvariantRequest("weyl-basic", p=p))
        requests.append(InvariantRequest("thomas-derived-second"))
        requests.append(InvariantRequest("weyl-derived-second"))
        requests.append(InvariantRequest("thomas-antisym"))
        for p in (1, 2, 3):
            requests.append(InvariantRequest("thomas-general", p=p))
        family(2)
    elif isinstance(spec, AlmostGeodesicPi1):
        requests.append(InvariantRequest("weyl-almost-geodesic"))
        for p in (1, 3):
            requests.append(InvariantRequest("thomas-basic", p=p))
            requests.append(InvariantRequest("weyl-basic", p=p))
            requests.append(InvariantRequest("thomas-general", p=p))
        requests.append(InvariantRequest("thomas-antisym"))
        requests.append(
            InvariantRequest(
                "weyl-family",
                selector=ClassSelector(3, (1, 1, 1), (1, 1, 1)),
                coeffs=coeffs,
            )
        )
        notes.append(
            "almost-geodesic mapping defines no class-2 object; "
            "class-2 invariants skipped"
        )
    return requests, notes


def reduction_check(
    instance: MappingInstance,
    selector: ClassSelector,
    coeffs: CurvatureCoefficients,
) -> bool:
    """Symbolic check: general family form equals the reduced equitorsion
    form on the source side (meaningful for equitorsion instances with a
    trivial tau datum)."""
    side = instance.side("source")
    general = weyl_family(
        selector,
        coeffs,
        side.space,
        omega2=side.omega2(),
        tau=side.tau(),
        p_underline=side.deformation_sym,
    ).tensor
    reduced = weyl_family_equitorsion(
        selector,
        coeffs,
        side.space,
        omega2=side.omega2(),
        p_underline=side.deformation_sym,
    ).tensor
    return (general - reduced).is_zero()


# ---------------------------------------------------------------------------
# Coefficient matrix of the family decomposition
# ---------------------------------------------------------------------------

COLUMN_LEGEND: Tuple[str, ...] = (
    "head: basic class-p Weyl invariant",
    "that^i_jm|n",
    "that^i_jn|m",
    "that^a_jm that^i_an",
    "that^a_jn that^i_am",
    "that^a_mn that^i_aj",
    "sym^i_an that^a_jm",
    "omega^i_an that^a_jm",
    "sym^a_jn that^i_am",
    "omega^a_jn that^i_am",
    "sym^i_am that^a_jn",
    "omega^i_am that^a_jn",
    "sym^a_jm that^i_an",
    "omega^a_jm that^i_an",
    "sym^a_mn that^i_ja",
    "omega^a_mn that^i_ja",
)


@dataclass(frozen=True)
class CoefficientMatrix:
    coefficients: CurvatureCoefficients
    legend: Tuple[str, ...]
    selectors: Tuple[str, ...]
    rows: Tuple[Tuple[Fraction, ...], ...]

    @property
    def row_count(self) -> int:
        return len(self.rows)

    @property
    def column_count(self) -> int:
        return len(self.legend)


def coefficient_matrix(coeffs: CurvatureCoefficients) -> CoefficientMatrix:
    """64-row matrix of exact term coefficients, one row per selector."""
    u, u2, v, v2, w = coeffs.as_tuple()
    zero = Fraction(0)
    rows = []
    labels = []
    for sel in all_selectors(2):
        p11, p12, p13 = sel.p1
        p21, p22, p23 = sel.p2
        row = [
            Fraction(1), u, u2, v, v2, w,
            -u if p11 == 1 else zero,
            -u if p11 == 2 else zero,
            u if p12 == 1 else zero,
            u if p12 == 2 else zero,
            -u2 if p21 == 1 else zero,
            -u2 if p21 == 2 else zero,
            u2 if p22 == 1 else zero,
            u2 if p22 == 2 else zero,
            (u if p13 == 1 else zero) + (u2 if p23 == 1 else zero),
            (u if p13 == 2 else zero) + (u2 if p23 == 2 else zero),
        ]
        rows.append(tuple(row))
        labels.append(sel.label())
    return CoefficientMatrix(coeffs, COLUMN_LEGEND, tuple(labels), tuple(rows))


def rank_exact(matrix) -> int:
    """Exact rank over Q by fraction-free (Bareiss) elimination.

    Accepts a CoefficientMatrix or any sequence of rows of rationals.
    """
    rows = matrix.rows if isinstance(matrix, CoefficientMatrix) else matrix
    m: List[List[int]] = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        denom = 1
        for x in fracs:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        m.append([int(x * denom) for x in fracs])
    if not m:
        return 0
    n_rows = len(m)
    n_cols = len(m[0])
    rank = 0
    prev = 1
    row = 0
    for col in range(n_cols):
        piv = None
        for r in range(row, n_rows):
            if m[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        if piv != row:
            m[row], m[piv] = m[piv], m[row]
        pivot = m[row][col]
        for r in range(row + 1, n_rows):
            factor = m[r][col]
            for c in range(col + 1, n_cols):
                m[r][c] = (pivot * m[r][c] - factor * m[row][c]) // prev
            m[r][col] = 0
        prev = pivot
        rank += 1
        row += 1
        if row == n_rows:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a if a >= 0 else -a
