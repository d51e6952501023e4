"""Sparse polynomials of low degree in a handful of unknowns.

A polynomial is a ``dict`` mapping a monomial (sorted tuple of variable
indices; ``()`` is the constant) to a nonzero :class:`Scalar`.  Only what the
stage-2 case split needs is here: ring operations, substitution of a
variable by a polynomial, and exact square roots in Q(i).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Mapping, Sequence

from .scalar import ONE, ZERO, Scalar

Poly = dict


def const(c) -> Poly:
    c = Scalar(c) if not isinstance(c, Scalar) else c
    return {(): c} if c else {}


def var(k: int) -> Poly:
    return {(k,): ONE}


def add(p: Poly, q: Poly, sq: int = 1) -> Poly:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m, ZERO) + (c if sq == 1 else -c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def scale(p: Poly, s: Scalar) -> Poly:
    if not s:
        return {}
    return {m: c * s for m, c in p.items()}


def mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            m = tuple(sorted(m1 + m2))
            v = out.get(m, ZERO) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def linear(coeffs: Mapping[int, Scalar]) -> Poly:
    return {(k,): c for k, c in coeffs.items() if c}


def degree(p: Poly) -> int:
    return max((len(m) for m in p), default=-1)


def variables(p: Poly) -> set[int]:
    return {v for m in p for v in m}


def substitute(p: Poly, k: int, value: Poly) -> Poly:
    """Replace variable ``k`` by ``value`` everywhere in ``p``."""
    if not any(k in m for m in p):
        return p
    out: Poly = {}
    for m, c in p.items():
        if k not in m:
            out = add(out, {m: c})
            continue
        rest = list(m)
        term: Poly = {(): c}
        while k in rest:
            rest.remove(k)
            term = mul(term, value)
        term = mul(term, {tuple(rest): ONE})
        out = add(out, term)
    return out


def format_poly(p: Poly, names: Sequence[str]) -> str:
    from .scalar import format_scalar

    if not p:
        return "0"
    parts = []
    for m in sorted(p, key=lambda m: (-len(m), m)):
        c = p[m]
        mono = "*".join(names[v] for v in m)
        cs = format_scalar(c)
        if c.im:
            cs = f"({cs})"
        parts.append(f"{cs}*{mono}" if mono else cs)
    return " + ".join(parts)


def _sqrt_fraction(x: Fraction) -> Fraction | None:
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def sqrt_gaussian(z: Scalar) -> Scalar | None:
    """A square root of ``z`` inside Q(i), or None if there is none."""
    if not z:
        return ZERO
    mod = _sqrt_fraction(z.norm2())
    if mod is None:
        return None
    re = _sqrt_fraction((mod + z.re) / 2)
    im = _sqrt_fraction((mod - z.re) / 2)
    if re is None or im is None:
        return None
    if z.im < 0:
        im = -im
    root = Scalar(re, im)
    return root if root * root == z else None
