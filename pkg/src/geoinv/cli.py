"""Command-line front end.

Subcommands:

  invariants  compute one invariant from a space file (plus optional
              mapping file) and list its nonzero components
  verify      build the mapping, run every applicable invariance check at
              seeded rational sample points, exit 0 only on exact equality
  example     run one of the two bundled worked examples
  rank        build the 64-row family coefficient matrix and report its
              exact rank

Exit codes: 0 success / all invariant, 1 verification violation, 2 input
error.  `--json` mirrors every reported value machine-readably.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import examples
from .analysis import (
    DEFAULT_POINTS,
    DEFAULT_SEED,
    InvariantRequest,
    coefficient_matrix,
    compute_for_side,
    invariance_check,
    rank_exact,
    reduction_check,
    sample_points,
    suite_for,
)
from .connection import ConnectionSpace, CurvatureCoefficients
from .expr import ExprError, parse_expr
from .invariants import (
    ClassSelector,
    all_selectors,
    thomas_antisym,
    thomas_basic,
    thomas_derived_second,
    thomas_general,
    thomas_geodesic,
    weyl_almost_geodesic,
    weyl_basic,
    weyl_derived_second,
    weyl_family,
)
from .files import LoadError, parse_mapping, parse_space
from .mappings import (
    MappingInstance,
    MappingSpecError,
    apply_mapping,
    omega_geodesic,
)
from .metric import SingularMetricError
from .tensor import TensorField

FACTOR_NOTE = (
    "factor note: the a-term coefficient is 1/2 per the class-3 construction; "
    "the doubled variant (coefficient 1, opposite orientation) is recorded as "
    "a display variant and not used"
)

COLUMN_COUNT_NOTE = (
    "column-count note: term-basis groupings vary (11 columns when the "
    "selector-independent shapes are lumped and the trace shapes merged, 13 "
    "when the trace shapes are split); this report uses the 16-column "
    "distinct-shape basis. The rank is the same under any of these groupings."
)

_INVARIANT_IDS = (
    "thomas-basic",
    "thomas-geodesic",
    "weyl-basic",
    "thomas-derived-second",
    "weyl-derived-second",
    "thomas-antisym",
    "thomas-general",
    "weyl-family",
    "weyl-almost-geodesic",
)


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _fraction_list(text: str, count: int, flag: str) -> List[Fraction]:
    parts = text.split(",")
    if len(parts) != count:
        raise LoadError(f"{flag} expects {count} comma-separated rationals")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError):
        raise LoadError(f"{flag}: not rational numbers: {text!r}") from None


def _int_triple(text: str, flag: str) -> Tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3 or any(p not in ("1", "2") for p in parts):
        raise LoadError(f"{flag} expects three comma-separated entries in {{1,2}}")
    return tuple(int(p) for p in parts)  # type: ignore[return-value]


def _coeffs_from(args) -> CurvatureCoefficients:
    u, u2 = _fraction_list(args.uu, 2, "--uu")
    v, v2, w = _fraction_list(args.vvw, 3, "--vvw")
    return CurvatureCoefficients(u, u2, v, v2, w)


def _emit(lines: List[str], payload: Dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _tensor_payload(t: TensorField) -> Dict[str, str]:
    return {
        ",".join(str(i + 1) for i in idx): str(value)
        for idx, value in t.nonzero_items()
    }


def _load_space(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_space(fh.read())


def _load_instance(
    space_path: str, mapping_path: str
) -> Tuple[MappingInstance, Tuple[str, ...]]:
    space_file = _load_space(space_path)
    source = space_file.connection()
    with open(mapping_path, "r", encoding="utf-8") as fh:
        mapping_file = parse_mapping(fh.read(), space_file.dim)
    spec = mapping_file.to_spec(space_file.dim)
    return apply_mapping(source, spec), mapping_file.notes


# ---------------------------------------------------------------------------
# invariants
# ---------------------------------------------------------------------------


def cmd_invariants(args) -> int:
    space_file = _load_space(args.space)
    source = space_file.connection()
    instance: Optional[MappingInstance] = None
    if args.mapping:
        instance, _ = _load_instance(args.space, args.mapping)

    rid = args.invariant
    p = args.p
    selector = None
    coeffs = None
    if rid in ("thomas-basic", "weyl-basic", "thomas-general") and p is None:
        p = 2
    if rid == "weyl-family":
        selector = ClassSelector(
            p or 2, _int_triple(args.p1, "--p1"), _int_triple(args.p2, "--p2")
        )
        coeffs = _coeffs_from(args)
    request = InvariantRequest(rid, p=p, selector=selector, coeffs=coeffs)

    if instance is not None:
        tensor = _compute_on_source(request, instance)
    else:
        tensor = _compute_bare(request, source)

    name = "W" if tensor.r + tensor.s == 4 else "T"
    lines = [f"invariant: {request.label()}"]
    notes = []
    if rid == "weyl-almost-geodesic":
        notes.append(FACTOR_NOTE)
    body = tensor.to_lines(name)
    lines += body if body else [f"{name} = 0"]
    lines += [f"note: {n}" for n in notes]
    payload = {
        "command": "invariants",
        "invariant": request.label(),
        "components": _tensor_payload(tensor),
        "zero": tensor.is_zero(),
        "notes": notes,
    }
    _emit(lines, payload, args.json)
    return 0


def _compute_on_source(request: InvariantRequest, instance: MappingInstance) -> TensorField:
    return compute_for_side(request, instance.side("source"))


def _compute_bare(request: InvariantRequest, space: ConnectionSpace) -> TensorField:
    """Space-only evaluation: class-2 data defaults to the trace-built
    geodesic object, the torsion datum to zero; class 3 needs a mapping."""
    rid = request.id
    zero12 = TensorField.zeros(space.dim, 1, 2)
    if rid in ("thomas-basic", "weyl-basic", "thomas-general", "weyl-family") and (
        (request.p or (request.selector.p if request.selector else None)) == 3
    ):
        raise LoadError("class-3 invariants require a mapping file")
    if rid == "thomas-basic":
        return thomas_basic(request.p, space, omega=omega_geodesic(space)).tensor
    if rid == "thomas-geodesic":
        return thomas_geodesic(space).tensor
    if rid == "weyl-basic":
        return weyl_basic(request.p, space, omega=omega_geodesic(space)).tensor
    if rid == "thomas-derived-second":
        return thomas_derived_second(space, zero12).tensor
    if rid == "weyl-derived-second":
        return weyl_derived_second(space, zero12).tensor
    if rid == "thomas-antisym":
        return thomas_antisym(space, zero12).tensor
    if rid == "thomas-general":
        return thomas_general(
            request.p, space, omega=omega_geodesic(space), tau=zero12
        ).tensor
    if rid == "weyl-family":
        return weyl_family(
            request.selector,
            request.coeffs,
            space,
            omega2=omega_geodesic(space),
            tau=zero12,
        ).tensor
    if rid == "weyl-almost-geodesic":
        raise LoadError("weyl-almost-geodesic requires a mapping file with an 'a' block")
    raise LoadError(f"unknown invariant {rid!r}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    instance, mapping_notes = _load_instance(args.space, args.mapping)
    coeffs = _coeffs_from(args)
    points = sample_points(instance.source.dim, args.points, args.seed)
    requests, notes = suite_for(
        instance, all_family_selectors=args.all_selectors, coeffs=coeffs
    )
    notes = list(mapping_notes) + notes
    lines = [
        f"mapping kind: {instance.spec.kind}",
        f"equitorsion: {'yes' if instance.is_equitorsion else 'no'}",
        f"points: {args.points}  seed: {args.seed}",
    ]
    reports = []
    any_violated = False
    for request in requests:
        report = invariance_check(instance, request, points)
        reports.append(report)
        mark = "exact-equal" if report.exact_equal else "VIOLATED"
        detail = ""
        if report.witness is not None:
            w = report.witness
            pos = ",".join(str(i) for i in w.component)
            pt = ", ".join(str(x) for x in w.point)
            detail = f"  witness [{pos}] at ({pt}): {w.source_value} vs {w.target_value}"
        if report.skipped:
            detail += f"  ({len(report.skipped)} point(s) skipped at poles)"
        lines.append(f"[{mark}] {report.request}{detail}")
        if not report.exact_equal:
            any_violated = True

    reduction: Optional[bool] = None
    if instance.is_equitorsion and instance.side("source").omega2() is not None:
        sels = (
            list(all_selectors(2))
            if args.all_selectors
            else [ClassSelector(2, p1, p2) for p1, p2 in _DEFAULT_REDUCTION_SAMPLE]
        )
        reduction = all(reduction_check(instance, sel, coeffs) for sel in sels)
        lines.append(
            f"[{'exact-equal' if reduction else 'VIOLATED'}] "
            f"family-reduction consistency ({len(sels)} selector(s), symbolic)"
        )
        if not reduction:
            any_violated = True
    else:
        notes.append(
            "family-reduction consistency check skipped "
            "(needs an equitorsion mapping with a class-2 object)"
        )

    lines += [f"note: {n}" for n in notes]
    verdict = "violated" if any_violated else "all-invariant"
    lines.append(f"verdict: {verdict}")
    payload = {
        "command": "verify",
        "mapping_kind": instance.spec.kind,
        "equitorsion": instance.is_equitorsion,
        "seed": args.seed,
        "points": [[str(x) for x in pt] for pt in points],
        "checks": [
            {
                "request": r.request,
                "verdict": r.verdict,
                "max_discrepancies": [str(d) for d in r.discrepancies],
                "skipped": [
                    {"point": [str(x) for x in pt], "reason": reason}
                    for pt, reason in r.skipped
                ],
                "witness": (
                    None
                    if r.witness is None
                    else {
                        "component": list(r.witness.component),
                        "point": [str(x) for x in r.witness.point],
                        "source": str(r.witness.source_value),
                        "target": str(r.witness.target_value),
                    }
                ),
            }
            for r in reports
        ],
        "family_reduction_consistent": reduction,
        "notes": notes,
        "verdict": verdict,
    }
    _emit(lines, payload, args.json)
    return 1 if any_violated else 0


_DEFAULT_REDUCTION_SAMPLE = (
    ((1, 1, 1), (1, 1, 1)),
    ((2, 2, 2), (2, 2, 2)),
    ((1, 2, 2), (2, 1, 1)),
)


# ---------------------------------------------------------------------------
# example
# ---------------------------------------------------------------------------


def cmd_example(args) -> int:
    if args.number == 1:
        return _example1(args)
    return _example2(args)


def _example1(args) -> int:
    metric = examples.example1_metric()
    space = examples.example1_space()
    lines = ["example 1: three-dimensional space with a non-symmetric metric"]
    payload: Dict[str, object] = {"command": "example", "number": 1}

    def section(title: str, key: str, t: TensorField, name: str, suffix: str = ""):
        lines.append(f"-- {title}")
        body = t.to_lines(name)
        if suffix:
            body = [
                line.replace(" = ", f" {suffix} = ", 1) for line in body
            ]
        lines.extend(body if body else [f"{name} = 0"])
        payload[key] = _tensor_payload(t)

    section("metric", "metric", metric.g, "g")
    section("symmetric part", "metric_sym", metric.sym, "g_sym")
    section("antisymmetric part", "metric_antisym", metric.antisym, "g_alt")
    section("inverse of the symmetric part", "inverse", metric.inverse, "g_inv")
    section("connection, symmetric part", "christoffel_sym", space.sym, "Gamma")
    section(
        "connection, antisymmetric part",
        "christoffel_antisym",
        space.torsion,
        "Gamma",
        suffix="(antisym)",
    )
    lines.append("-- curvature of the associated space")
    if space.curvature.is_zero():
        lines.append("R = 0")
    else:
        lines.extend(space.curvature.to_lines("R"))
    payload["curvature_zero"] = space.curvature.is_zero()
    section("class-2 object (geodesic trace form)", "omega2", omega_geodesic(space), "omega2")
    w2 = weyl_basic(2, space, omega=omega_geodesic(space)).tensor
    section("basic Weyl invariant, class 2", "weyl_basic_2", w2, "W")
    _emit(lines, payload, args.json)
    return 0


def _example2(args) -> int:
    space = examples.example2_space()
    lines = ["example 2: flat diagonal metric, almost-geodesic mapping"]
    payload: Dict[str, object] = {"command": "example", "number": 2}
    notes = [FACTOR_NOTE]
    if args.a:
        entries = {}
        for i_text, j_text, expr_text in args.a:
            i, j = int(i_text) - 1, int(j_text) - 1
            value = parse_expr(expr_text, examples.DIM)
            entries[(i, j)] = value
            entries.setdefault((j, i), value)
        a = TensorField.from_entries(examples.DIM, 0, 2, entries)
        if not a.is_symmetric_in(0, 1):
            raise LoadError("--a entries must define a symmetric tensor")
        instance = None
    else:
        spec = examples.example2_default_mapping()
        a = spec.a
        instance = apply_mapping(space, spec)
        notes.append("default mapping: validated almost-geodesic deformation")

    lines.append("-- curvature of the associated space")
    lines.append("R = 0" if space.curvature.is_zero() else "R != 0")
    payload["curvature_zero"] = space.curvature.is_zero()
    lines.append("-- tensor a")
    body = a.to_lines("a")
    lines.extend(body if body else ["a = 0"])
    payload["a"] = _tensor_payload(a)
    result = weyl_almost_geodesic(space, a).tensor
    lines.append("-- basic Weyl-type invariant of the almost-geodesic mapping")
    body = result.to_lines("W")
    lines.extend(body if body else ["W = 0"])
    payload["invariant"] = _tensor_payload(result)

    verdict = None
    if instance is not None:
        points = sample_points(examples.DIM, DEFAULT_POINTS, DEFAULT_SEED)
        report = invariance_check(
            instance, InvariantRequest("weyl-almost-geodesic"), points
        )
        verdict = report.verdict
        lines.append(f"invariance at {len(report.points)} sample points: {report.verdict}")
    payload["invariance"] = verdict
    lines += [f"note: {n}" for n in notes]
    payload["notes"] = notes
    _emit(lines, payload, args.json)
    return 0 if verdict in (None, "exact-equal") else 1


# ---------------------------------------------------------------------------
# rank
# ---------------------------------------------------------------------------


def cmd_rank(args) -> int:
    coeffs = _coeffs_from(args)
    matrix = coefficient_matrix(coeffs)
    rank = rank_exact(matrix)
    lines = [
        f"coefficients: u={coeffs.u} u'={coeffs.u2} v={coeffs.v} v'={coeffs.v2} w={coeffs.w}",
        f"rows = {matrix.row_count}",
        f"columns = {matrix.column_count}",
        "column basis:",
    ]
    lines += [f"  [{i}] {name}" for i, name in enumerate(matrix.legend)]
    lines.append(f"rank = {rank}")
    lines.append(COLUMN_COUNT_NOTE)
    payload = {
        "command": "rank",
        "coefficients": [str(c) for c in coeffs.as_tuple()],
        "rows": matrix.row_count,
        "columns": matrix.column_count,
        "legend": list(matrix.legend),
        "rank": rank,
        "note": COLUMN_COUNT_NOTE,
    }
    _emit(lines, payload, args.json)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geoinv",
        description="Exact invariants of mappings of affine connection spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="compute one invariant from files")
    p_inv.add_argument("space", help="space file")
    p_inv.add_argument("--mapping", help="mapping file (required for class 3)")
    p_inv.add_argument("--invariant", required=True, choices=_INVARIANT_IDS)
    p_inv.add_argument("--p", type=int, choices=(1, 2, 3), help="invariant class")
    p_inv.add_argument("--p1", default="1,1,1", help="family selector triple, e.g. 1,2,1")
    p_inv.add_argument("--p2", default="1,1,1", help="family selector triple")
    p_inv.add_argument("--uu", default="0,0", help="family coefficients u,u'")
    p_inv.add_argument("--vvw", default="0,0,0", help="family coefficients v,v',w")
    p_inv.add_argument("--json", action="store_true")
    p_inv.set_defaults(func=cmd_invariants)

    p_ver = sub.add_parser("verify", help="verify invariance of a mapping")
    p_ver.add_argument("space")
    p_ver.add_argument("mapping")
    p_ver.add_argument("--points", type=int, default=DEFAULT_POINTS)
    p_ver.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p_ver.add_argument(
        "--all-selectors", action="store_true", help="sweep all 64 family selectors"
    )
    p_ver.add_argument("--uu", default="1,2", help="family coefficients u,u'")
    p_ver.add_argument("--vvw", default="3,5,7", help="family coefficients v,v',w")
    p_ver.add_argument("--json", action="store_true")
    p_ver.set_defaults(func=cmd_verify)

    p_ex = sub.add_parser("example", help="run a bundled worked example")
    p_ex.add_argument("number", type=int, choices=(1, 2))
    p_ex.add_argument(
        "--a",
        nargs=3,
        action="append",
        metavar=("I", "J", "EXPR"),
        help="example 2: entry of the symmetric tensor a (1-based indices)",
    )
    p_ex.add_argument("--json", action="store_true")
    p_ex.set_defaults(func=cmd_example)

    p_rank = sub.add_parser("rank", help="rank of the family coefficient matrix")
    p_rank.add_argument("--uu", default="1,2", help="coefficients u,u'")
    p_rank.add_argument("--vvw", default="3,5,7", help="coefficients v,v',w")
    p_rank.add_argument("--json", action="store_true")
    p_rank.set_defaults(func=cmd_rank)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        LoadError,
        MappingSpecError,
        SingularMetricError,
        ExprError,
        FileNotFoundError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
