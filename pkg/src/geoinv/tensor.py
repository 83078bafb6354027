"""Dense tensor fields over exact rational-function components.

A TensorField of valence (r, s) on an N-dimensional chart stores N^(r+s)
Expr components in a flat tuple.  Slot order is fixed once and for all:
contravariant (upper) slots first, then covariant (lower) slots, each in
declaration order; every index runs 0..N-1 internally (printing and file
formats are 1-based).

Storage is dense on purpose: charts here are small (N of a few), so N^3 or
N^4 exact components are cheap and the code stays simple.  Values are
immutable and operations pure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Sequence, Tuple, Union

from .expr import Expr, Scalar


@dataclass(frozen=True)
class IndexPair:
    """Two slot positions in a tensor's combined slot list.

    Positions count upper slots first, then lower slots.  A contraction
    pair must consist of one upper and one lower slot.
    """

    first: int
    second: int

    def validate(self, r: int, s: int) -> None:
        total = r + s
        if self.first == self.second:
            raise ValueError("index pair positions must be distinct")
        for p in (self.first, self.second):
            if not 0 <= p < total:
                raise ValueError(f"slot position {p} out of range for valence ({r},{s})")

    def contraction_slots(self, r: int, s: int) -> Tuple[int, int]:
        """(upper_pos, lower_pos) relative to each variance group."""
        self.validate(r, s)
        a, b = self.first, self.second
        if a > b:
            a, b = b, a
        if a >= r or b < r:
            raise ValueError("contraction needs one upper and one lower slot")
        return a, b - r


class TensorField:
    __slots__ = ("dim", "r", "s", "components")

    def __init__(self, dim: int, r: int, s: int, components: Sequence[Expr]):
        if len(components) != dim ** (r + s):
            raise ValueError(
                f"expected {dim ** (r + s)} components for valence ({r},{s}), "
                f"got {len(components)}"
            )
        for c in components:
            if c.arity != dim:
                raise ValueError("component arity must equal the chart dimension")
        object.__setattr__(self, "dim", dim)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "components", tuple(components))

    def __setattr__(self, name, value):
        raise AttributeError("TensorField is immutable")

    # -- construction --------------------------------------------------------

    @staticmethod
    def zeros(dim: int, r: int, s: int) -> "TensorField":
        zero = Expr.const(dim, 0)
        return TensorField(dim, r, s, [zero] * dim ** (r + s))

    @staticmethod
    def from_function(
        dim: int, r: int, s: int, fn: Callable[[Tuple[int, ...]], Expr]
    ) -> "TensorField":
        comps = [fn(idx) for idx in itertools.product(range(dim), repeat=r + s)]
        return TensorField(dim, r, s, comps)

    @staticmethod
    def from_entries(
        dim: int, r: int, s: int, entries: Dict[Tuple[int, ...], Expr]
    ) -> "TensorField":
        """Build from a sparse {index-tuple: Expr} map (rest zero)."""
        zero = Expr.const(dim, 0)
        comps = [zero] * dim ** (r + s)
        for idx, value in entries.items():
            comps[_flat(dim, idx)] = value
        return TensorField(dim, r, s, comps)

    # -- access ---------------------------------------------------------------

    def __getitem__(self, idx: Tuple[int, ...]) -> Expr:
        return self.components[_flat(self.dim, idx)]

    def indices(self) -> Iterator[Tuple[int, ...]]:
        return itertools.product(range(self.dim), repeat=self.r + self.s)

    def nonzero_items(self) -> Iterator[Tuple[Tuple[int, ...], Expr]]:
        for idx in self.indices():
            value = self[idx]
            if not value.is_zero():
                yield idx, value

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    # -- pointwise algebra ------------------------------------------------------

    def _check(self, other: "TensorField") -> None:
        if (self.dim, self.r, self.s) != (other.dim, other.r, other.s):
            raise ValueError(
                f"tensor mismatch: ({self.dim},{self.r},{self.s}) vs "
                f"({other.dim},{other.r},{other.s})"
            )

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check(other)
        return TensorField(
            self.dim, self.r, self.s,
            [a + b for a, b in zip(self.components, other.components)],
        )

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check(other)
        return TensorField(
            self.dim, self.r, self.s,
            [a - b for a, b in zip(self.components, other.components)],
        )

    def __neg__(self) -> "TensorField":
        return TensorField(self.dim, self.r, self.s, [-a for a in self.components])

    def scale(self, c: Union[Scalar, Expr]) -> "TensorField":
        if isinstance(c, Expr):
            return TensorField(
                self.dim, self.r, self.s, [a * c for a in self.components]
            )
        return TensorField(
            self.dim, self.r, self.s, [a.scale(c) for a in self.components]
        )

    # -- index gymnastics ---------------------------------------------------------

    def outer(self, other: "TensorField") -> "TensorField":
        """Tensor product; upper slots of self then other, same for lower."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch in outer product")
        dim = self.dim
        r, s = self.r + other.r, self.s + other.s

        def fn(idx: Tuple[int, ...]) -> Expr:
            u1 = idx[: self.r]
            u2 = idx[self.r : self.r + other.r]
            l1 = idx[self.r + other.r : self.r + other.r + self.s]
            l2 = idx[self.r + other.r + self.s :]
            return self[u1 + l1] * other[u2 + l2]

        return TensorField.from_function(dim, r, s, fn)

    def contract(self, upper: int, lower: int) -> "TensorField":
        """Sum over one upper slot against one lower slot (group-relative)."""
        if not 0 <= upper < self.r:
            raise ValueError(f"no upper slot {upper}")
        if not 0 <= lower < self.s:
            raise ValueError(f"no lower slot {lower}")
        dim = self.dim
        r, s = self.r - 1, self.s - 1

        def fn(idx: Tuple[int, ...]) -> Expr:
            up = list(idx[:r])
            lo = list(idx[r:])
            total = Expr.const(dim, 0)
            for a in range(dim):
                full_up = up[:upper] + [a] + up[upper:]
                full_lo = lo[:lower] + [a] + lo[lower:]
                total = total + self[tuple(full_up + full_lo)]
            return total

        return TensorField.from_function(dim, r, s, fn)

    def transpose(self, p1: int, p2: int) -> "TensorField":
        """Swap two slots of the same variance (global positions)."""
        self._variance_pair(p1, p2)

        def fn(idx: Tuple[int, ...]) -> Expr:
            swapped = list(idx)
            swapped[p1], swapped[p2] = swapped[p2], swapped[p1]
            return self[tuple(swapped)]

        return TensorField.from_function(self.dim, self.r, self.s, fn)

    def _variance_pair(self, p1: int, p2: int) -> None:
        total = self.r + self.s
        if p1 == p2 or not (0 <= p1 < total and 0 <= p2 < total):
            raise ValueError("slot positions must be distinct and in range")
        if (p1 < self.r) != (p2 < self.r):
            raise ValueError("slots must share variance for (anti)symmetrization")

    def sym_part(self, p1: int, p2: int) -> "TensorField":
        """Symmetric part in two same-variance slots (global positions)."""
        half = Fraction(1, 2)
        return (self + self.transpose(p1, p2)).scale(half)

    def antisym_part(self, p1: int, p2: int) -> "TensorField":
        half = Fraction(1, 2)
        return (self - self.transpose(p1, p2)).scale(half)

    def is_symmetric_in(self, p1: int, p2: int) -> bool:
        return (self - self.transpose(p1, p2)).is_zero()

    def is_antisymmetric_in(self, p1: int, p2: int) -> bool:
        return (self + self.transpose(p1, p2)).is_zero()

    # -- evaluation / output -------------------------------------------------------

    def map_components(self, fn: Callable[[Expr], Expr]) -> "TensorField":
        return TensorField(self.dim, self.r, self.s, [fn(c) for c in self.components])

    def eval_at(self, point: Sequence[Scalar]) -> Tuple[Fraction, ...]:
        return tuple(c.eval_at(point) for c in self.components)

    def to_lines(self, name: str) -> List[str]:
        """Nonzero components as '<name>[i,j,...] = <canonical expr>' (1-based)."""
        lines = []
        for idx, value in self.nonzero_items():
            pos = ",".join(str(i + 1) for i in idx)
            lines.append(f"{name}[{pos}] = {value}")
        return lines

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TensorField):
            return NotImplemented
        return (
            (self.dim, self.r, self.s) == (other.dim, other.r, other.s)
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.r, self.s, self.components))

    def __repr__(self) -> str:
        return f"TensorField(dim={self.dim}, valence=({self.r},{self.s}))"


def _flat(dim: int, idx: Tuple[int, ...]) -> int:
    flat = 0
    for i in idx:
        if not 0 <= i < dim:
            raise IndexError(f"index {i} out of range for dimension {dim}")
        flat = flat * dim + i
    return flat


def contract(t: TensorField, pair: IndexPair) -> TensorField:
    """Contraction over an (upper, lower) slot pair given globally."""
    upper, lower = pair.contraction_slots(t.r, t.s)
    return t.contract(upper, lower)


def sym_part(t: TensorField, p1: int, p2: int) -> TensorField:
    return t.sym_part(p1, p2)


def antisym_part(t: TensorField, p1: int, p2: int) -> TensorField:
    return t.antisym_part(p1, p2)


def kronecker_delta(dim: int) -> TensorField:
    """The (1,1) identity tensor."""
    one = Expr.const(dim, 1)
    zero = Expr.const(dim, 0)
    return TensorField.from_function(
        dim, 1, 1, lambda idx: one if idx[0] == idx[1] else zero
    )
