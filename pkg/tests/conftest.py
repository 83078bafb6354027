"""Shared fixtures and seeded random generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from geoinv import (
    ConnectionSpace,
    GeneralizedMetric,
    TensorField,
    parse_expr,
)
from geoinv.expr import Expr
from geoinv import examples


def e3(text: str) -> Expr:
    return parse_expr(text, 3)


@pytest.fixture(scope="session")
def example1_metric():
    return examples.example1_metric()


@pytest.fixture(scope="session")
def example1_space():
    return examples.example1_space()


@pytest.fixture(scope="session")
def example2_space():
    return examples.example2_space()


# ---------------------------------------------------------------------------
# seeded generators
# ---------------------------------------------------------------------------


def rand_fraction(rng: random.Random, lo: int = -4, hi: int = 4) -> Fraction:
    num = rng.randint(lo, hi)
    den = rng.randint(1, 3)
    return Fraction(num, den)


def rand_poly_expr(
    rng: random.Random, arity: int, max_terms: int = 3, max_deg: int = 2
) -> Expr:
    """Random polynomial expression with small integer-ish coefficients."""
    total = Expr.const(arity, rand_fraction(rng))
    for _ in range(rng.randint(0, max_terms)):
        term = Expr.const(arity, rand_fraction(rng))
        for v in range(arity):
            d = rng.randint(0, max_deg)
            if d:
                term = term * Expr.coordinate(arity, v) ** d
        total = total + term
    return total


def rand_expr_tree(rng: random.Random, arity: int, depth: int = 3) -> Expr:
    """Random expression tree over +, -, *, / and small powers."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Expr.coordinate(arity, rng.randrange(arity))
        return Expr.const(arity, rand_fraction(rng))
    op = rng.choice("++-**/^")
    a = rand_expr_tree(rng, arity, depth - 1)
    if op == "^":
        k = rng.choice((-2, -1, 2, 3))
        if a.is_zero():
            a = a + Expr.const(arity, 1)
        return a**k
    b = rand_expr_tree(rng, arity, depth - 1)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b.is_zero():
        b = b + Expr.const(arity, rng.randint(1, 3))
    return a / b


def rand_tensor(
    rng: random.Random,
    dim: int,
    r: int,
    s: int,
    sparsity: float = 0.5,
    entry=rand_poly_expr,
) -> TensorField:
    zero = Expr.const(dim, 0)

    def fn(idx):
        if rng.random() < sparsity:
            return zero
        return entry(rng, dim)

    return TensorField.from_function(dim, r, s, fn)


def rand_symmetric_lower(rng: random.Random, dim: int, sparsity: float = 0.5) -> TensorField:
    """Random (1,2) tensor symmetric in the lower pair."""
    return rand_tensor(rng, dim, 1, 2, sparsity).sym_part(1, 2)


def rand_antisymmetric_lower(rng: random.Random, dim: int, sparsity: float = 0.5) -> TensorField:
    return rand_tensor(rng, dim, 1, 2, sparsity).antisym_part(1, 2)


def rand_connection(rng: random.Random, dim: int = 3, sparsity: float = 0.6) -> ConnectionSpace:
    """Random polynomial non-symmetric connection."""
    return ConnectionSpace(rand_tensor(rng, dim, 1, 2, sparsity))


def rand_one_form(rng: random.Random, dim: int = 3) -> TensorField:
    return TensorField.from_function(dim, 0, 1, lambda idx: rand_poly_expr(rng, dim, 2, 1))


def rand_monomial_metric(rng: random.Random, dim: int = 3) -> GeneralizedMetric:
    """Diagonal monomial metric with a random linear antisymmetric part.

    Monomial diagonals keep every derived denominator monomial, so the bulk
    invariance loops stay fast while the space remains genuinely curved.
    """
    entries = {}
    for i in range(dim):
        c = rng.randint(1, 3)
        v = rng.randrange(dim)
        d = rng.randint(1, 2)
        term = Expr.const(dim, c) * Expr.coordinate(dim, v) ** d
        entries[(i, i)] = term
    for i in range(dim):
        for j in range(i + 1, dim):
            if rng.random() < 0.6:
                val = rand_poly_expr(rng, dim, 1, 1)
                entries[(i, j)] = entries.get((i, j), Expr.const(dim, 0)) + val
                entries[(j, i)] = entries.get((j, i), Expr.const(dim, 0)) - val
    return GeneralizedMetric(TensorField.from_entries(dim, 0, 2, entries))


def rand_dense_metric(rng: random.Random, dim: int = 3) -> GeneralizedMetric:
    """Symmetric positive-ish metric with dense linear entries."""
    from geoinv.metric import determinant

    while True:
        entries = {}
        for i in range(dim):
            entries[(i, i)] = Expr.const(dim, rng.randint(2, 4)) + rand_poly_expr(
                rng, dim, 1, 1
            )
        for i in range(dim):
            for j in range(i + 1, dim):
                val = rand_poly_expr(rng, dim, 1, 1)
                entries[(i, j)] = val
                entries[(j, i)] = val
        g = TensorField.from_entries(dim, 0, 2, entries)
        if not determinant(g.sym_part(0, 1)).is_zero():
            return GeneralizedMetric(g)


# ---------------------------------------------------------------------------
# independent oracles
# ---------------------------------------------------------------------------


def contraction_oracle(t: TensorField, upper: int, lower: int) -> TensorField:
    """Plain-loop Einstein summation, independent of TensorField.contract."""
    dim = t.dim
    out_r, out_s = t.r - 1, t.s - 1
    results = []
    import itertools

    for idx in itertools.product(range(dim), repeat=out_r + out_s):
        up = list(idx[:out_r])
        lo = list(idx[out_r:])
        total = Expr.const(dim, 0)
        for a in range(dim):
            full = tuple(up[:upper] + [a] + up[upper:] + lo[:lower] + [a] + lo[lower:])
            total = total + t[full]
        results.append(total)
    return TensorField(dim, out_r, out_s, results)
