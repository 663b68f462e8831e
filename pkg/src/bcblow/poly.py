"""Sparse multivariate polynomials as ``{exponent tuple: coefficient}`` dicts.

Coefficients are ``int`` or ``Fraction``; zero coefficients are never stored.
Degrees are weighted: ``weights[i]`` is the degree of variable ``i``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

Coeff = Union[int, Fraction]
Monomial = Tuple[int, ...]
Poly = Dict[Monomial, Coeff]


def normalize(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def mono_degree(m: Monomial, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(m, weights))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def unit(nvars: int, i: int, e: int = 1) -> Monomial:
    m = [0] * nvars
    m[i] = e
    return tuple(m)


def constant(c: Coeff, nvars: int) -> Poly:
    return {(0,) * nvars: c} if c else {}


def add(a: Poly, b: Poly, scale: Coeff = 1) -> Poly:
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + scale * c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def scale(a: Poly, c: Coeff) -> Poly:
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def mul(a: Poly, b: Poly, weights: Optional[Sequence[int]] = None,
        max_degree: Optional[int] = None) -> Poly:
    """Product, dropping every monomial of weighted degree above ``max_degree``."""
    out: Poly = {}
    if not a or not b:
        return out
    if max_degree is None:
        for ma, ca in a.items():
            for mb, cb in b.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                v = out.get(m, 0) + ca * cb
                if v:
                    out[m] = v
                else:
                    del out[m]
        return out
    da = [(ma, ca, mono_degree(ma, weights)) for ma, ca in a.items()]
    db = [(mb, cb, mono_degree(mb, weights)) for mb, cb in b.items()]
    db.sort(key=lambda t: t[2])
    for ma, ca, dga in da:
        room = max_degree - dga
        if room < 0:
            continue
        for mb, cb, dgb in db:
            if dgb > room:
                break
            m = tuple(x + y for x, y in zip(ma, mb))
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                del out[m]
    return out


def power(a: Poly, e: int, nvars: int, weights=None, max_degree=None) -> Poly:
    result = constant(1, nvars)
    base = a
    while e:
        if e & 1:
            result = mul(result, base, weights, max_degree)
        e >>= 1
        if e:
            base = mul(base, base, weights, max_degree)
    return result


def truncate(a: Poly, weights: Sequence[int], max_degree: int) -> Poly:
    return {m: c for m, c in a.items() if mono_degree(m, weights) <= max_degree}


def homogeneous_part(a: Poly, weights: Sequence[int], degree: int) -> Poly:
    return {m: c for m, c in a.items() if mono_degree(m, weights) == degree}


def degrees(a: Poly, weights: Sequence[int]) -> set:
    return {mono_degree(m, weights) for m in a}


def div_one_plus(a: Poly, lin: Poly, weights: Sequence[int], max_degree: int) -> Poly:
    """Exact power-series quotient ``a / (1 + lin)`` truncated at ``max_degree``.

    ``lin`` must have no constant term. Solved degree by degree from
    ``q = a - lin*q``.
    """
    by_deg: Dict[int, Poly] = {}
    for m, c in a.items():
        d = mono_degree(m, weights)
        if d <= max_degree:
            by_deg.setdefault(d, {})[m] = c
    q: Dict[int, Poly] = {}
    lin_by_deg: Dict[int, Poly] = {}
    for m, c in lin.items():
        d = mono_degree(m, weights)
        if d == 0:
            raise ValueError("series to invert must have no constant term")
        lin_by_deg.setdefault(d, {})[m] = c
    for d in range(max_degree + 1):
        cur = dict(by_deg.get(d, {}))
        for k, part in lin_by_deg.items():
            if d - k >= 0 and q.get(d - k):
                cur = add(cur, mul(part, q[d - k]), -1)
        q[d] = cur
    out: Poly = {}
    for part in q.values():
        out.update(part)
    return out


def substitute(a: Poly, values: Sequence, one, zero=None):
    """Evaluate ``a`` with variable ``i`` replaced by ``values[i]``.

    ``values`` may be ring elements or numbers; ``one`` is the unit of
    their ring. Powers are cached per variable.
    """
    total = zero if zero is not None else one * 0
    cache: Dict[Tuple[int, int], object] = {}

    def pw(i: int, e: int):
        key = (i, e)
        if key not in cache:
            cache[key] = values[i] if e == 1 else pw(i, e - 1) * values[i]
        return cache[key]

    for m, c in a.items():
        term = one
        for i, e in enumerate(m):
            if e:
                term = term * pw(i, e)
        total = total + term * c
    return total


def lex_key(m: Monomial) -> Monomial:
    return m


def grlex_key(m: Monomial, weights: Sequence[int]):
    return (mono_degree(m, weights), m)


def leading(a: Poly, weights: Sequence[int]) -> Monomial:
    return max(a, key=lambda m: (mono_degree(m, weights), m))


def monomials_up_to(weights: Sequence[int], max_degree: int) -> Iterable[Monomial]:
    """All monomials of weighted degree <= ``max_degree``."""
    n = len(weights)

    def rec(i: int, budget: int, prefix: list):
        if i == n:
            yield tuple(prefix)
            return
        w = weights[i]
        e = 0
        while e * w <= budget:
            prefix.append(e)
            yield from rec(i + 1, budget - e * w, prefix)
            prefix.pop()
            e += 1
            if w == 0:
                break

    yield from rec(0, max_degree, [])
