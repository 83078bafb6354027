"""Exact sparse multivariate polynomial arithmetic over the rationals.

A polynomial in n variables is a dict mapping exponent tuples to Fraction
coefficients:

  PolyDict = Dict[Monomial, Fraction]
  Monomial = Tuple[int, ...]      (entry i is the degree of variable i)

Zero-coefficient terms are never stored; the zero polynomial is the empty
dict.  All keys of one polynomial have the same length (the variable count).
Coefficients are exact rationals, so identity testing is fully reliable.

Monomials are ordered by graded lexicographic order (total degree first,
then lexicographic on the exponent tuple); `leading` and the printer use it.

The GCD is the classical primitive polynomial remainder sequence: integer
and monomial contents are split off, the polynomials are viewed as
univariate in a chosen main variable with polynomial coefficients, and
pseudo-remainders are reduced to primitive parts each step.  Cheap exits
(exact-division trials and a sound evaluation-projection coprimality test)
cover the common cases before the PRS runs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from math import lcm as _int_lcm
from typing import Dict, Iterable, Optional, Sequence, Tuple

Monomial = Tuple[int, ...]
PolyDict = Dict[Monomial, Fraction]

_ONE = Fraction(1)


def zero() -> PolyDict:
    """The zero polynomial."""
    return {}


def const(nvars: int, value) -> PolyDict:
    """Constant polynomial `value` in `nvars` variables."""
    c = Fraction(value)
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def one(nvars: int) -> PolyDict:
    return {(0,) * nvars: _ONE}


def variable(nvars: int, index: int) -> PolyDict:
    """The polynomial x_index (0-based index)."""
    if not 0 <= index < nvars:
        raise ValueError(f"variable index {index} out of range for {nvars} variables")
    mono = [0] * nvars
    mono[index] = 1
    return {tuple(mono): _ONE}


def is_zero(p: PolyDict) -> bool:
    return not p


def is_const(p: PolyDict) -> bool:
    if not p:
        return True
    return len(p) == 1 and not any(next(iter(p)))


def const_value(p: PolyDict) -> Fraction:
    """Value of a constant polynomial (raises if non-constant)."""
    if not p:
        return Fraction(0)
    if not is_const(p):
        raise ValueError("polynomial is not constant")
    return next(iter(p.values()))


def add(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a:
        return dict(b)
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        s = out.get(mono)
        if s is None:
            out[mono] = coeff
        else:
            s = s + coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
    return out


def sub(a: PolyDict, b: PolyDict) -> PolyDict:
    if not b:
        return dict(a)
    out = dict(a)
    for mono, coeff in b.items():
        s = out.get(mono)
        if s is None:
            out[mono] = -coeff
        else:
            s = s - coeff
            if s:
                out[mono] = s
            else:
                del out[mono]
    return out


def neg(a: PolyDict) -> PolyDict:
    return {mono: -coeff for mono, coeff in a.items()}


def mul(a: PolyDict, b: PolyDict) -> PolyDict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    out: PolyDict = {}
    for mono_a, coeff_a in a.items():
        for mono_b, coeff_b in b.items():
            mono = tuple(x + y for x, y in zip(mono_a, mono_b))
            s = out.get(mono)
            if s is None:
                out[mono] = coeff_a * coeff_b
            else:
                s = s + coeff_a * coeff_b
                if s:
                    out[mono] = s
                else:
                    del out[mono]
    return out


def scale(a: PolyDict, c) -> PolyDict:
    c = Fraction(c)
    if c == 0 or not a:
        return {}
    return {mono: coeff * c for mono, coeff in a.items()}


def pow_(a: PolyDict, k: int) -> PolyDict:
    if k < 0:
        raise ValueError("negative power of a polynomial")
    nvars = arity_of(a)
    out = one(nvars) if nvars is not None else {(): _ONE}
    base = dict(a)
    while k:
        if k & 1:
            out = mul(out, base)
        k >>= 1
        if k:
            base = mul(base, base)
    return out


def arity_of(p: PolyDict) -> Optional[int]:
    """Number of variables, or None for the (arity-less) zero polynomial."""
    for mono in p:
        return len(mono)
    return None


def diff(a: PolyDict, v: int) -> PolyDict:
    """Partial derivative with respect to variable v (0-based)."""
    out: PolyDict = {}
    for mono, coeff in a.items():
        e = mono[v]
        if e == 0:
            continue
        new = list(mono)
        new[v] = e - 1
        key = tuple(new)
        s = out.get(key, None)
        s = coeff * e if s is None else s + coeff * e
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def eval_at(a: PolyDict, point: Sequence[Fraction]) -> Fraction:
    """Exact value at a rational point."""
    total = Fraction(0)
    for mono, coeff in a.items():
        term = coeff
        for e, x in zip(mono, point):
            if e:
                term *= x**e
        total += term
    return total


def degree(p: PolyDict, v: int) -> int:
    """Degree in variable v (-1 for the zero polynomial)."""
    if not p:
        return -1
    return max(mono[v] for mono in p)


def total_degree(p: PolyDict) -> int:
    if not p:
        return -1
    return max(sum(mono) for mono in p)


def grlex_key(mono: Monomial) -> Tuple[int, Monomial]:
    return (sum(mono), mono)


def leading(p: PolyDict) -> Tuple[Monomial, Fraction]:
    """Leading (monomial, coefficient) under graded lexicographic order."""
    mono = max(p, key=grlex_key)
    return mono, p[mono]


def sorted_terms(p: PolyDict) -> Iterable[Tuple[Monomial, Fraction]]:
    """Terms in descending graded lexicographic order."""
    return ((m, p[m]) for m in sorted(p, key=grlex_key, reverse=True))


def min_exponents(p: PolyDict) -> Monomial:
    """Componentwise minimum exponent vector (the monomial content part)."""
    it = iter(p)
    mins = list(next(it))
    for mono in it:
        for i, e in enumerate(mono):
            if e < mins[i]:
                mins[i] = e
    return tuple(mins)


def shift_down(p: PolyDict, m: Monomial) -> PolyDict:
    """Divide by the monomial x^m (must divide every term)."""
    if not any(m):
        return dict(p)
    return {tuple(e - d for e, d in zip(mono, m)): c for mono, c in p.items()}


def int_content(p: PolyDict) -> Fraction:
    """Positive rational c with p/c integer-coefficient and content 1."""
    num = 0
    den = 1
    for coeff in p.values():
        num = _int_gcd(num, coeff.numerator)
        den = _int_lcm(den, coeff.denominator)
    return Fraction(num, den)


def divexact(a: PolyDict, b: PolyDict) -> Optional[PolyDict]:
    """Exact quotient a/b, or None when b does not divide a.

    Greedy leading-term reduction under grlex; correct as a divisibility
    test because the leading term of any product is the product of leading
    terms.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    # quick degree filters
    mono_b, lc_b = leading(b)
    if total_degree(a) < total_degree(b):
        return None
    nvars = len(mono_b)
    for v in range(nvars):
        if degree(a, v) < degree(b, v):
            return None
    quot: PolyDict = {}
    rem = dict(a)
    while rem:
        mono_r, lc_r = leading(rem)
        q_mono = tuple(er - eb for er, eb in zip(mono_r, mono_b))
        if any(e < 0 for e in q_mono):
            return None
        q_coeff = lc_r / lc_b
        quot[q_mono] = q_coeff
        # rem -= q * b
        for mono, coeff in b.items():
            key = tuple(x + y for x, y in zip(q_mono, mono))
            s = rem.get(key)
            s = -q_coeff * coeff if s is None else s - q_coeff * coeff
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return quot


# ---------------------------------------------------------------------------
# GCD machinery (integer-coefficient polynomials)
# ---------------------------------------------------------------------------


def _vars_in(p: PolyDict) -> Tuple[int, ...]:
    nvars = arity_of(p)
    if nvars is None:
        return ()
    present = [False] * nvars
    for mono in p:
        for i, e in enumerate(mono):
            if e:
                present[i] = True
    return tuple(i for i, f in enumerate(present) if f)


def _coeff_of(p: PolyDict, v: int, d: int) -> PolyDict:
    """Coefficient of x_v^d, as a polynomial with x_v-exponent zero."""
    out: PolyDict = {}
    for mono, coeff in p.items():
        if mono[v] == d:
            key = list(mono)
            key[v] = 0
            out[tuple(key)] = coeff
    return out


def _prem(f: PolyDict, g: PolyDict, v: int) -> PolyDict:
    """Pseudo-remainder of f by g with respect to variable v."""
    dg = degree(g, v)
    lg = _coeff_of(g, v, dg)
    r = dict(f)
    nvars = arity_of(g)
    while r:
        dr = degree(r, v)
        if dr < dg:
            break
        lr = _coeff_of(r, v, dr)
        shift = [0] * nvars
        shift[v] = dr - dg
        shifted = {
            tuple(e + s for e, s in zip(mono, shift)): c for mono, c in g.items()
        }
        r = sub(mul(r, lg), mul(lr, shifted))
    return r


def _content_wrt(p: PolyDict, v: int) -> PolyDict:
    """GCD of the x_v-coefficients of p (a polynomial free of x_v)."""
    cont: PolyDict = {}
    for d in sorted({mono[v] for mono in p}):
        cont = gcd_int(cont, _coeff_of(p, v, d))
        if is_const(cont):
            break
    return cont


_PROJECTION_POINTS = (
    (3, 5, 7, 11, 13, 17, 19, 23, 29, 31),
    (5, 7, 2, 13, 3, 11, 23, 29, 17, 19),
    (7, 11, 13, 3, 5, 2, 29, 19, 31, 23),
)


def _univ_gcd_degree(a: Dict[int, Fraction], b: Dict[int, Fraction]) -> int:
    """Degree of gcd of two univariate rational polynomials (sparse dicts)."""
    a = {k: v for k, v in a.items() if v}
    b = {k: v for k, v in b.items() if v}
    if not a:
        return max(b) if b else -1
    while b:
        db = max(b)
        lb = b[db]
        r = dict(a)
        while r:
            dr = max(r)
            if dr < db:
                break
            q = r[dr] / lb
            for k, val in b.items():
                key = k + dr - db
                s = r.get(key, Fraction(0)) - q * val
                if s:
                    r[key] = s
                else:
                    r.pop(key, None)
        a, b = b, r
    return max(a)


def _project(p: PolyDict, v: int, point: Sequence[int]) -> Dict[int, Fraction]:
    """Substitute integers for every variable except x_v."""
    out: Dict[int, Fraction] = {}
    for mono, coeff in p.items():
        term = coeff
        for i, e in enumerate(mono):
            if i == v or not e:
                continue
            term *= Fraction(point[i]) ** e
        key = mono[v]
        s = out.get(key, Fraction(0)) + term
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return out


def _coprime_by_projection(f: PolyDict, g: PolyDict, common: Sequence[int]) -> bool:
    """Sound one-sided coprimality test.

    For each shared variable v, substitute fixed integers for the others.
    If the leading x_v-coefficient of f survives the substitution, the
    projection of any common divisor keeps its x_v-degree, so a constant
    projected gcd proves the true gcd is free of x_v.  When every shared
    variable is ruled out the primitive parts are coprime.  Returns False
    whenever inconclusive.
    """
    for v in common:
        df = degree(f, v)
        lead = _coeff_of(f, v, df)
        proved = False
        for point in _PROJECTION_POINTS:
            nvars = arity_of(f)
            if nvars > len(point):
                return False
            if eval_at(lead, [Fraction(x) for x in point]) == 0:
                continue
            pf = _project(f, v, point)
            pg = _project(g, v, point)
            if not pg:
                continue
            if _univ_gcd_degree(pf, pg) == 0:
                proved = True
                break
        if not proved:
            return False
    return True


def _positive_lc(p: PolyDict) -> PolyDict:
    if not p:
        return p
    _, lc = leading(p)
    return neg(p) if lc < 0 else p


def gcd_int(f: PolyDict, g: PolyDict) -> PolyDict:
    """GCD of two integer-coefficient polynomials over Z.

    Includes integer and monomial content; result has positive leading
    coefficient under grlex.  gcd(0, g) = ±g.
    """
    if not f:
        return _positive_lc(dict(g))
    if not g:
        return _positive_lc(dict(f))
    cf = int_content(f)
    cg = int_content(g)
    c = Fraction(_int_gcd(cf.numerator, cg.numerator), _int_lcm(cf.denominator, cg.denominator))
    f = scale(f, 1 / cf)
    g = scale(g, 1 / cg)
    mf = min_exponents(f)
    mg = min_exponents(g)
    m = tuple(min(a, b) for a, b in zip(mf, mg))
    f = shift_down(f, mf)
    g = shift_down(g, mg)
    h = _gcd_primitive(f, g)
    if any(m):
        h = {tuple(e + d for e, d in zip(mono, m)): co for mono, co in h.items()}
    return _positive_lc(scale(h, c))


def _gcd_primitive(f: PolyDict, g: PolyDict) -> PolyDict:
    """GCD of primitive integer polynomials without monomial content."""
    nvars = arity_of(f)
    if is_const(f) or is_const(g):
        return one(nvars)
    if f == g:
        return dict(f)
    if divexact(g, f) is not None:
        return dict(f)
    if divexact(f, g) is not None:
        return dict(g)
    common = tuple(sorted(set(_vars_in(f)) & set(_vars_in(g))))
    if not common:
        return one(nvars)
    if _coprime_by_projection(f, g, common):
        return one(nvars)
    # main variable: smallest worst-case PRS length
    v = min(common, key=lambda w: min(degree(f, w), degree(g, w)))
    cf = _content_wrt(f, v)
    cg = _content_wrt(g, v)
    fp = divexact(f, cf)
    gp = divexact(g, cg)
    cc = gcd_int(cf, cg)
    a, b = (fp, gp) if degree(fp, v) >= degree(gp, v) else (gp, fp)
    while True:
        r = _prem(a, b, v)
        if not r:
            h = b
            break
        if degree(r, v) == 0:
            h = one(nvars)
            break
        cr = _content_wrt(r, v)
        a, b = b, divexact(r, cr)
    if not is_const(h):
        ch = _content_wrt(h, v)
        h = divexact(h, ch)
        c_extra = int_content(h)
        if c_extra != 1:
            h = scale(h, 1 / c_extra)
    return mul(cc, h) if not is_const(cc) or const_value(cc) != 1 else h


def gcd_poly(f: PolyDict, g: PolyDict) -> PolyDict:
    """GCD over Q, returned as a primitive integer polynomial, positive lc.

    Rational contents of the inputs are irrelevant (a gcd over a field is
    only defined up to scalars) and are stripped first.
    """
    if not f and not g:
        return {}
    if f:
        f = scale(f, 1 / int_content(f))
    if g:
        g = scale(g, 1 / int_content(g))
    h = gcd_int(f, g)
    if h:
        c = int_content(h)
        if c != 1:
            h = scale(h, 1 / c)
    return h


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def _mono_str(mono: Monomial) -> str:
    parts = []
    for i, e in enumerate(mono):
        if e == 0:
            continue
        if e == 1:
            parts.append(f"x{i + 1}")
        else:
            parts.append(f"x{i + 1}^{e}")
    return "*".join(parts)


def to_str(p: PolyDict) -> str:
    """Canonical string: descending grlex terms joined by ' + ' / ' - '."""
    if not p:
        return "0"
    pieces = []
    for mono, coeff in sorted_terms(p):
        ms = _mono_str(mono)
        mag = abs(coeff)
        if not ms:
            body = str(mag)
        elif mag == 1:
            body = ms
        else:
            body = f"{mag}*{ms}"
        pieces.append(("-" if coeff < 0 else "+", body))
    sign, body = pieces[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out
