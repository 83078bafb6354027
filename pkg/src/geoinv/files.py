"""Plain-text file formats for spaces and mappings.

Space files:

    dim 3
    coord x1 x2 x3
    metric              # or: connection
    1 1 x1^2            # metric entries:      i j  <expr>
    ...                 # connection entries:  i j k <expr>

Mapping files:

    mapping geodesic    # geodesic | second-class | general | almost-geodesic-pi1
    psi 1 1/x1          # blocks as the kind requires:
    ...                 #   psi j, rho j, sigma i j k, tau i j k,
                        #   tau_bar i j k, a i j, P i j k

Unlisted entries are zero.  Indices are 1-based.  Blank lines and lines
starting with '#' are ignored.  Symmetry constraints (sigma, P, a
symmetric; tau, tau_bar antisymmetric) are validated on load, so a file
stating only one of two symmetric entries is rejected.  The writers emit
canonical sorted output that round-trips byte-identically through the
parsers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .connection import ConnectionSpace
from .expr import Expr, ExprSyntaxError, parse_expr
from .mappings import (
    AlmostGeodesicPi1,
    EquitorsionGeodesic,
    General,
    MappingSpec,
    SecondClass,
)
from .metric import GeneralizedMetric, generalized_christoffel
from .tensor import TensorField


class LoadError(Exception):
    """Malformed space or mapping file."""


@dataclass(frozen=True)
class SpaceFile:
    dim: int
    kind: str  # "metric" or "connection"
    entries: Dict[Tuple[int, ...], Expr]

    def metric(self) -> Optional[GeneralizedMetric]:
        if self.kind != "metric":
            return None
        return GeneralizedMetric(
            TensorField.from_entries(self.dim, 0, 2, dict(self.entries))
        )

    def connection(self) -> ConnectionSpace:
        if self.kind == "metric":
            return generalized_christoffel(self.metric())
        return ConnectionSpace(
            TensorField.from_entries(self.dim, 1, 2, dict(self.entries))
        )


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((lineno, line))
    return out


def _parse_indexed(
    line: str, lineno: int, n_indices: int, dim: int
) -> Tuple[Tuple[int, ...], str]:
    parts = line.split(None, n_indices)
    if len(parts) != n_indices + 1:
        raise LoadError(f"line {lineno}: expected {n_indices} indices and an expression")
    try:
        idx = tuple(int(p) for p in parts[:n_indices])
    except ValueError:
        raise LoadError(f"line {lineno}: indices must be integers") from None
    for i in idx:
        if not 1 <= i <= dim:
            raise LoadError(f"line {lineno}: index {i} out of range 1..{dim}")
    return idx, parts[n_indices]


def parse_space(text: str) -> SpaceFile:
    lines = _content_lines(text)
    if not lines:
        raise LoadError("empty space file")
    pos = 0

    lineno, line = lines[pos]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise LoadError(f"line {lineno}: expected 'dim N'")
    try:
        dim = int(parts[1])
    except ValueError:
        raise LoadError(f"line {lineno}: dimension must be an integer") from None
    if dim < 2:
        raise LoadError(f"line {lineno}: dimension must be at least 2")
    pos += 1

    if pos >= len(lines):
        raise LoadError("missing 'coord' line")
    lineno, line = lines[pos]
    parts = line.split()
    expected = ["coord"] + [f"x{i}" for i in range(1, dim + 1)]
    if parts != expected:
        raise LoadError(f"line {lineno}: expected '{' '.join(expected)}'")
    pos += 1

    if pos >= len(lines):
        raise LoadError("missing 'metric' or 'connection' block")
    lineno, line = lines[pos]
    if line not in ("metric", "connection"):
        raise LoadError(f"line {lineno}: expected 'metric' or 'connection'")
    kind = line
    n_indices = 2 if kind == "metric" else 3
    pos += 1

    entries: Dict[Tuple[int, ...], Expr] = {}
    for lineno, line in lines[pos:]:
        idx, expr_text = _parse_indexed(line, lineno, n_indices, dim)
        if idx in entries:
            raise LoadError(f"line {lineno}: duplicate entry {idx}")
        try:
            value = parse_expr(expr_text, dim)
        except (ExprSyntaxError, ZeroDivisionError) as exc:
            raise LoadError(f"line {lineno}: {exc}") from None
        entries[tuple(i - 1 for i in idx)] = value
    return SpaceFile(dim, kind, entries)


def write_space(space: SpaceFile) -> str:
    lines = [f"dim {space.dim}"]
    lines.append("coord " + " ".join(f"x{i}" for i in range(1, space.dim + 1)))
    lines.append(space.kind)
    for idx in sorted(space.entries):
        value = space.entries[idx]
        if value.is_zero():
            continue
        pos = " ".join(str(i + 1) for i in idx)
        lines.append(f"{pos} {value}")
    return "\n".join(lines) + "\n"


_MAPPING_BLOCKS = {
    "psi": 1,
    "rho": 1,
    "sigma": 3,
    "tau": 3,
    "tau_bar": 3,
    "a": 2,
    "P": 3,
}

_MAPPING_KINDS = ("geodesic", "second-class", "general", "almost-geodesic-pi1")


@dataclass(frozen=True)
class MappingFile:
    kind: str
    blocks: Dict[str, Dict[Tuple[int, ...], Expr]]
    notes: Tuple[str, ...] = ()

    def to_spec(self, dim: int) -> MappingSpec:
        def tensor(name: str, r: int, s: int) -> TensorField:
            return TensorField.from_entries(dim, r, s, self.blocks.get(name, {}))

        if self.kind == "geodesic":
            if "psi" not in self.blocks:
                raise LoadError("geodesic mapping requires a 'psi' block")
            return EquitorsionGeodesic(tensor("psi", 0, 1))
        if self.kind == "second-class":
            if "rho" not in self.blocks and "sigma" not in self.blocks:
                raise LoadError("second-class mapping requires 'rho' and/or 'sigma'")
            return SecondClass(tensor("rho", 0, 1), tensor("sigma", 1, 2))
        if self.kind == "general":
            if "P" not in self.blocks:
                raise LoadError("general mapping requires a 'P' block")
            tau = tensor("tau", 1, 2)
            tau_bar = tensor("tau_bar", 1, 2) if "tau_bar" in self.blocks else tau
            return General(tensor("P", 1, 2), tau, tau_bar)
        if self.kind == "almost-geodesic-pi1":
            if "a" not in self.blocks or "P" not in self.blocks:
                raise LoadError("almost-geodesic-pi1 mapping requires 'a' and 'P'")
            return AlmostGeodesicPi1(tensor("a", 0, 2), tensor("P", 1, 2))
        raise LoadError(f"unknown mapping kind {self.kind!r}")


def parse_mapping(text: str, dim: int) -> MappingFile:
    lines = _content_lines(text)
    if not lines:
        raise LoadError("empty mapping file")
    lineno, line = lines[0]
    parts = line.split()
    if len(parts) != 2 or parts[0] != "mapping":
        raise LoadError(f"line {lineno}: expected 'mapping <kind>'")
    kind = parts[1]
    if kind not in _MAPPING_KINDS:
        raise LoadError(
            f"line {lineno}: unknown kind {kind!r}; expected one of {', '.join(_MAPPING_KINDS)}"
        )
    blocks: Dict[str, Dict[Tuple[int, ...], Expr]] = {}
    for lineno, line in lines[1:]:
        name = line.split(None, 1)[0]
        if name not in _MAPPING_BLOCKS:
            raise LoadError(f"line {lineno}: unknown block {name!r}")
        n_indices = _MAPPING_BLOCKS[name]
        rest = line[len(name) :].strip()
        idx, expr_text = _parse_indexed(rest, lineno, n_indices, dim)
        block = blocks.setdefault(name, {})
        key = tuple(i - 1 for i in idx)
        if key in block:
            raise LoadError(f"line {lineno}: duplicate entry in block {name!r}")
        try:
            block[key] = parse_expr(expr_text, dim)
        except (ExprSyntaxError, ZeroDivisionError) as exc:
            raise LoadError(f"line {lineno}: {exc}") from None
    notes = []
    if kind == "general" and "tau_bar" not in blocks and "tau" in blocks:
        notes.append("tau_bar not given: defaulting to tau (equitorsion)")
    return MappingFile(kind, blocks, tuple(notes))


def write_mapping(mapping: MappingFile) -> str:
    lines = [f"mapping {mapping.kind}"]
    for name in sorted(mapping.blocks):
        for idx in sorted(mapping.blocks[name]):
            value = mapping.blocks[name][idx]
            if value.is_zero():
                continue
            pos = " ".join(str(i + 1) for i in idx)
            lines.append(f"{name} {pos} {value}")
    return "\n".join(lines) + "\n"
