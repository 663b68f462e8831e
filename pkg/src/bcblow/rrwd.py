"""Universal Riemann-Roch-without-denominators series.

For bundles ``U`` (rank u) and ``V`` (rank v) there is a unique integral power
series ``f`` with

    prod_{i=0}^{u} c(wedge^i U^dual (x) V)^{(-1)^i} - 1 = c_u(U) * f(c(U); c(V)).

:func:`compute_f` builds the left side in Chern roots, divides exactly by
``x_1 ... x_u`` and rewrites the quotient in elementary symmetric classes.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Dict, Tuple

from . import poly as P
from .errors import DivisibilityViolation, IntegralityViolation, RankMismatch, RingMismatch
from .parser import format_polynomial
from .symchern import (FormalBundle, TotalClass, elementary, elementary_weights, root_product,
                       symmetric_reduce)


@dataclass(frozen=True)
class FSeries:
    """Integer coefficients on monomials in ``z_1..z_u; w_1..w_v`` (deg z_i = i, deg w_j = j)."""

    u: int
    v: int
    max_degree: int
    coeffs: Dict[P.Monomial, int]

    @property
    def weights(self) -> Tuple[int, ...]:
        return elementary_weights((self.u, self.v))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(f"z{i}" for i in range(1, self.u + 1)) + tuple(f"w{j}" for j in range(1, self.v + 1))

    def constant_term(self) -> int:
        return self.coeffs.get((0,) * (self.u + self.v), 0)

    def component(self, q: int) -> Dict[P.Monomial, int]:
        return {m: c for m, c in self.coeffs.items() if P.mono_degree(m, self.weights) == q}

    def __str__(self):
        w = self.weights
        return format_polynomial(self.coeffs, self.names, order=lambda m: (P.mono_degree(m, w), tuple(-e for e in m)))

    def table(self) -> str:
        """Coefficient table, one ``degree  monomial  coefficient`` row per term."""
        rows = [f"# f-series u={self.u} v={self.v} max_degree={self.max_degree}"]
        w = self.weights
        for m in sorted(self.coeffs, key=lambda m: (P.mono_degree(m, w), tuple(-e for e in m))):
            mono = format_polynomial({m: 1}, self.names)
            rows.append(f"{P.mono_degree(m, w)}\t{mono}\t{self.coeffs[m]}")
        return "\n".join(rows)

    def to_json(self) -> dict:
        w = self.weights
        return {
            "u": self.u, "v": self.v, "max_degree": self.max_degree,
            "terms": [{"degree": P.mono_degree(m, w), "monomial": format_polynomial({m: 1}, self.names),
                       "coefficient": c}
                      for m, c in sorted(self.coeffs.items(),
                                         key=lambda t: (P.mono_degree(t[0], w), tuple(-e for e in t[0])))],
        }


def koszul_total(u: int, v: int, degree: int) -> P.Poly:
    """``prod_i c(wedge^i U^dual (x) V)^{(-1)^i} - 1`` in roots ``x_1..x_u, y_1..y_v``,
    truncated at ``degree``."""
    n = u + v
    weights = (1,) * n
    numerator = P.constant(1, n)
    for i in range(0, u + 1):
        roots = []
        for subset in combinations(range(u), i):
            for b in range(v):
                lin = {P.unit(n, u + b): 1}
                for s in subset:
                    lin[P.unit(n, s)] = lin.get(P.unit(n, s), 0) - 1
                roots.append({m: c for m, c in lin.items() if c})
        if i % 2 == 0:
            numerator = P.mul(numerator, root_product(roots, n, degree), weights, degree)
        else:
            for r in roots:
                numerator = P.div_one_plus(numerator, r, weights, degree)
    return P.add(numerator, P.constant(1, n), -1)


_cache: Dict[Tuple[int, int, int], FSeries] = {}
_lock = threading.Lock()


def compute_f(u: int, v: int, max_degree: int) -> FSeries:
    if u < 1 or v < 0 or max_degree < 0:
        raise ValueError("need u >= 1, v >= 0, max_degree >= 0")
    key = (u, v, max_degree)
    cached = _cache.get(key)
    if cached is not None:
        return cached
    lhs = koszul_total(u, v, u + max_degree)
    quotient: P.Poly = {}
    for m, c in lhs.items():
        if any(e == 0 for e in m[:u]):
            raise DivisibilityViolation(f"monomial {m} is not divisible by x_1...x_{u}")
        quotient[tuple(e - 1 for e in m[:u]) + m[u:]] = c
    reduced = symmetric_reduce(quotient, (u, v))
    coeffs = {}
    for m, c in reduced.items():
        if isinstance(c, Fraction):
            if c.denominator != 1:
                raise IntegralityViolation(f"coefficient {c} of {m} is not an integer")
            c = c.numerator
        coeffs[m] = c
    f = FSeries(u, v, max_degree, coeffs)
    with _lock:
        _cache.setdefault(key, f)
    return _cache[key]


def expected_constant_term(u: int, v: int) -> int:
    return (-1) ** (u - 1) * factorial(u - 1) * v


def defining_identity_holds(f: FSeries) -> bool:
    """Expand ``e_u(x) * f(e(x); e(y))`` back into roots and compare with the Koszul side."""
    u, v = f.u, f.v
    n = u + v
    weights = (1,) * n
    top = u + f.max_degree
    values = [elementary(n, range(u), k) for k in range(1, u + 1)] + \
             [elementary(n, range(u, n), k) for k in range(1, v + 1)]
    expanded: P.Poly = {}
    for m, c in f.coeffs.items():
        term = P.constant(c, n)
        for val, e in zip(values, m):
            if e:
                term = P.mul(term, P.power(val, e, n, weights, top), weights, top)
        expanded = P.add(expanded, term)
    expanded = P.mul(expanded, elementary(n, range(u), u), weights, top)
    return P.truncate(expanded, weights, top) == koszul_total(u, v, top)


def f_specialize(f: FSeries, U: FormalBundle, V: FormalBundle):
    """``f(c(U); c(V))`` in the ring of ``U`` and ``V``."""
    if U.rank != f.u or V.rank != f.v:
        raise RankMismatch(f"series is for ranks ({f.u}, {f.v}), bundles have ({U.rank}, {V.rank})")
    if U.ring is not V.ring:
        raise RingMismatch("U and V live in different rings")
    ring = U.ring
    values = list(U.chern) + list(V.chern)
    return P.substitute(f.coeffs, values, ring.one(), ring.zero())


def rr_without_denominators(embed, F: FormalBundle) -> TotalClass:
    """``c(i_* F) = 1 + i_*(f(N, F))`` on the ambient ring of ``embed``."""
    if F.ring is not embed.ringX:
        raise RingMismatch("F must live on the center")
    f = compute_f(embed.r, F.rank, embed.ringX.dim)
    return TotalClass(embed.ringY.one() + embed.push(f_specialize(f, embed.N, F)))
