"""Symmetric-function calculus for Chern classes.

Chern roots only exist inside the universal computations below: a formula is
computed once in a polynomial ring of roots, reduced to elementary symmetric
polynomials, cached, and then evaluated on the Chern classes of a bundle. Any
ring whose elements support ``+ - *``, rational scalars and ``component(k)``
can host a :class:`FormalBundle`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial
from typing import List, Sequence, Tuple

from . import poly as P
from .errors import DegreeMismatch, NotSymmetric, NotUnital, RankMismatch, RingMismatch

# ---------------------------------------------------------------------------
# symmetric reduction


def elementary(nvars: int, variables: Sequence[int], k: int) -> P.Poly:
    """``e_k`` of the given variable indices, as a polynomial in ``nvars`` variables."""
    out: P.Poly = {}
    for subset in combinations(variables, k):
        m = [0] * nvars
        for i in subset:
            m[i] = 1
        out[tuple(m)] = 1
    return out


@lru_cache(maxsize=None)
def _elementary_power(sizes: Tuple[int, ...], group: int, k: int, e: int) -> Tuple:
    nvars = sum(sizes)
    start = sum(sizes[:group])
    base = elementary(nvars, range(start, start + sizes[group]), k)
    return tuple(P.power(base, e, nvars).items())


def _elementary_monomial(sizes: Tuple[int, ...], exps: Tuple[int, ...]) -> P.Poly:
    nvars = sum(sizes)
    out = P.constant(1, nvars)
    pos = 0
    for g, n in enumerate(sizes):
        for k in range(1, n + 1):
            e = exps[pos + k - 1]
            if e:
                out = P.mul(out, dict(_elementary_power(sizes, g, k, e)))
        pos += n
    return out


def symmetric_reduce(p: P.Poly, sizes: Sequence[int]) -> P.Poly:
    """Rewrite ``p`` (symmetric separately in each block of variables) in elementary
    symmetric polynomials.

    The result uses one variable per ``e_k`` of each block, blocks in order,
    i.e. ``e_1..e_{sizes[0]}`` then ``e_1..e_{sizes[1]}`` and so on. Classical
    leading-monomial subtraction under lex order.
    """
    sizes = tuple(sizes)
    p = dict(p)
    out: P.Poly = {}
    while p:
        lead = max(p)
        c = p[lead]
        exps: List[int] = []
        pos = 0
        for n in sizes:
            a = lead[pos:pos + n]
            if any(a[i] < a[i + 1] for i in range(n - 1)):
                raise NotSymmetric(f"polynomial is not symmetric (leading monomial {lead})")
            exps.extend(a[i] - (a[i + 1] if i + 1 < n else 0) for i in range(n))
            pos += n
        key = tuple(exps)
        out[key] = out.get(key, 0) + c
        p = P.add(p, _elementary_monomial(sizes, key), -c)
    return {m: P.normalize(c) for m, c in out.items() if c}


def elementary_weights(sizes: Sequence[int]) -> Tuple[int, ...]:
    return tuple(k for n in sizes for k in range(1, n + 1))


def root_product(roots: Sequence[P.Poly], nvars: int, max_degree: int,
                 series: Sequence = (1, 1)) -> P.Poly:
    """``prod_r series(r)`` truncated at ``max_degree``; roots are linear forms."""
    weights = (1,) * nvars
    acc = P.constant(1, nvars)
    for r in roots:
        factor = P.constant(series[0], nvars)
        pw = P.constant(1, nvars)
        for k in range(1, min(len(series), max_degree + 1)):
            pw = P.mul(pw, r, weights, max_degree)
            if series[k]:
                factor = P.add(factor, pw, series[k])
        acc = P.mul(acc, factor, weights, max_degree)
    return acc


def _split_by_degree(p: P.Poly, weights: Sequence[int], top: int) -> Tuple[P.Poly, ...]:
    parts = [dict() for _ in range(top + 1)]
    for m, c in p.items():
        d = P.mono_degree(m, weights)
        if d <= top:
            parts[d][m] = c
    return tuple(parts)


def _linear(nvars: int, coeffs: dict) -> P.Poly:
    return {P.unit(nvars, i): c for i, c in coeffs.items() if c}


@lru_cache(maxsize=None)
def wedge_formula(u: int, i: int, max_degree: int) -> Tuple[P.Poly, ...]:
    """Chern classes of the ``i``-th exterior power of a rank ``u`` bundle,
    degree by degree, as polynomials in ``c_1..c_u``."""
    roots = [_linear(u, {s: 1 for s in subset}) for subset in combinations(range(u), i)]
    prod = root_product(roots, u, max_degree)
    return _split_by_degree(symmetric_reduce(prod, (u,)), elementary_weights((u,)), max_degree)


@lru_cache(maxsize=None)
def tensor_formula(u: int, v: int, max_degree: int) -> Tuple[P.Poly, ...]:
    """Chern classes of ``B (x) F`` in ``c_1(B)..c_u(B), c_1(F)..c_v(F)``."""
    n = u + v
    roots = [_linear(n, {a: 1, u + b: 1}) for a in range(u) for b in range(v)]
    prod = root_product(roots, n, max_degree)
    return _split_by_degree(symmetric_reduce(prod, (u, v)), elementary_weights((u, v)), max_degree)


def _todd_coefficients(max_degree: int) -> List[Fraction]:
    # x / (1 - e^{-x}) as the reciprocal of (1 - e^{-x}) / x = sum (-1)^m x^m / (m+1)!
    a = [Fraction((-1) ** m, factorial(m + 1)) for m in range(max_degree + 1)]
    inv = [Fraction(0)] * (max_degree + 1)
    inv[0] = 1 / a[0]
    for k in range(1, max_degree + 1):
        inv[k] = -sum(a[j] * inv[k - j] for j in range(1, k + 1)) / a[0]
    return inv


@lru_cache(maxsize=None)
def todd_formula(u: int, max_degree: int) -> Tuple[P.Poly, ...]:
    roots = [_linear(u, {a: 1}) for a in range(u)]
    prod = root_product(roots, u, max_degree, _todd_coefficients(max_degree))
    return _split_by_degree(symmetric_reduce(prod, (u,)), elementary_weights((u,)), max_degree)


# ---------------------------------------------------------------------------
# Newton sums S_m = (x_1^m + ... + x_r^m) / m!


def _pad(p: P.Poly, nvars: int) -> P.Poly:
    return {m + (0,) * (nvars - len(m)): c for m, c in p.items()}


@lru_cache(maxsize=None)
def _power_sum_in_elementary(m: int) -> Tuple:
    """``p_m = sum x_i^m`` in ``T_1..T_m`` (T_k = sigma_k), by Newton's identities."""
    total: P.Poly = {P.unit(m, m - 1): (-1) ** (m - 1) * m}
    for i in range(1, m):
        prev = _pad(dict(_power_sum_in_elementary(m - i)), m)
        total = P.add(total, P.mul({P.unit(m, i - 1): 1}, prev), (-1) ** (i - 1))
    return tuple(total.items())


@lru_cache(maxsize=None)
def newton_polynomial(m: int) -> Tuple:
    """``P_m`` with ``S_m = P_m(sigma_1, ..., sigma_m)``; variables ``T_1..T_m``."""
    if m == 0:
        return ()
    return tuple((k, P.normalize(Fraction(c, factorial(m))))
                 for k, c in _power_sum_in_elementary(m))


@lru_cache(maxsize=None)
def elementary_polynomial(m: int) -> Tuple:
    """``Q_m`` with ``sigma_m = Q_m(S_1, ..., S_m)``; variables ``T_1..T_m``."""
    if m == 0:
        return (((), 1),)
    total: P.Poly = {}
    for i in range(1, m + 1):
        # sigma_m = (1/m) sum_{i} (-1)^{i-1} sigma_{m-i} p_i, p_i = i! S_i
        prev = _pad(dict(elementary_polynomial(m - i)), m)
        term = P.mul(prev, {P.unit(m, i - 1): factorial(i)})
        total = P.add(total, term, Fraction((-1) ** (i - 1), m))
    return tuple((k, P.normalize(c)) for k, c in total.items())


def _check_degrees(values: Sequence, what: str):
    for k, v in enumerate(values, start=1):
        if hasattr(v, "is_homogeneous") and v and not v.is_homogeneous(k):
            raise DegreeMismatch(f"{what}_{k} must be homogeneous of degree {k}")


def _one_like(values: Sequence):
    v = values[0]
    return v.ring.one() if hasattr(v, "ring") else 1


def newton_from_elementary(m: int, sigmas: Sequence):
    """``S_m`` from ``sigma_1..sigma_m`` (classes or numbers)."""
    if m == 0:
        raise ValueError("m must be positive")
    sigmas = list(sigmas)[:m]
    if len(sigmas) < m:
        raise ValueError(f"need sigma_1..sigma_{m}")
    _check_degrees(sigmas, "sigma")
    one = _one_like(sigmas)
    return P.substitute(dict(newton_polynomial(m)), sigmas, one, one * 0)


def elementary_from_newton(m: int, sums: Sequence):
    """``sigma_m`` from ``S_1..S_m`` (classes or numbers)."""
    if m == 0:
        raise ValueError("m must be positive")
    sums = list(sums)[:m]
    if len(sums) < m:
        raise ValueError(f"need S_1..S_{m}")
    _check_degrees(sums, "S")
    one = _one_like(sums)
    return P.substitute(dict(elementary_polynomial(m)), sums, one, one * 0)


# ---------------------------------------------------------------------------
# total classes and bundles


@dataclass(frozen=True)
class TotalClass:
    value: object

    def __post_init__(self):
        if self.value.component(0) != self.value.ring.one():
            raise NotUnital("total class must have constant term 1")

    @property
    def ring(self):
        return self.value.ring

    def part(self, k: int):
        return self.value.component(k)

    def __mul__(self, other: "TotalClass") -> "TotalClass":
        return total_mul(self, other)

    def __eq__(self, other):
        if isinstance(other, TotalClass):
            return self.value == other.value
        return self.value == other

    def __str__(self):
        return str(self.value)


def _as_total(a) -> TotalClass:
    return a if isinstance(a, TotalClass) else TotalClass(a)


def total_mul(a, b) -> TotalClass:
    a, b = _as_total(a), _as_total(b)
    if a.ring is not b.ring:
        raise RingMismatch("total classes live in different rings")
    return TotalClass(a.value * b.value)


def total_inv(a) -> TotalClass:
    """Inverse by the geometric series in the nilpotent part."""
    a = _as_total(a)
    ring = a.ring
    x = a.value - ring.one()
    result = ring.one()
    term = ring.one()
    for _ in range(ring.dim):
        term = -(term * x)
        if not term:
            break
        result = result + term
    return TotalClass(result)


@dataclass(frozen=True)
class FormalBundle:
    """Rank plus Chern classes ``c_1..c_rank``; ``c_0 = 1`` is implicit."""

    ring: object
    rank: int
    chern: Tuple

    def __post_init__(self):
        object.__setattr__(self, "chern", tuple(self.chern))
        if len(self.chern) != self.rank:
            raise RankMismatch(f"need {self.rank} Chern classes, got {len(self.chern)}")
        for c in self.chern:
            if c.ring is not self.ring:
                raise RingMismatch("Chern class lives in the wrong ring")
        _check_degrees(self.chern, "c")

    @classmethod
    def trivial(cls, ring, rank: int) -> "FormalBundle":
        return cls(ring, rank, [ring.zero()] * rank)

    @classmethod
    def line(cls, ring, c1) -> "FormalBundle":
        return cls(ring, 1, [c1])

    @classmethod
    def from_total(cls, ring, rank: int, total) -> "FormalBundle":
        value = total.value if isinstance(total, TotalClass) else total
        return cls(ring, rank, [value.component(k) for k in range(1, rank + 1)])

    def c(self, i: int):
        if i == 0:
            return self.ring.one()
        if i < 0 or i > self.rank:
            return self.ring.zero()
        return self.chern[i - 1]

    def total(self) -> TotalClass:
        value = self.ring.one()
        for c in self.chern:
            value = value + c
        return TotalClass(value)

    def pullback(self, f) -> "FormalBundle":
        """Bundle pulled back along a map ``f`` (any callable on classes)."""
        images = [f(c) for c in self.chern]
        ring = images[0].ring if images else getattr(f, "target", self.ring)
        return FormalBundle(ring, self.rank, images)


def _evaluate(parts: Sequence[P.Poly], values: Sequence, ring) -> List:
    one, zero = ring.one(), ring.zero()
    return [P.substitute(p, values, one, zero) if p else zero for p in parts]


def chern_of_dual(b: FormalBundle) -> FormalBundle:
    return FormalBundle(b.ring, b.rank, [c if i % 2 == 0 else -c for i, c in enumerate(b.chern, start=1)])


def chern_of_wedge(b: FormalBundle, i: int) -> FormalBundle:
    if not 0 <= i <= b.rank:
        raise IndexError(f"exterior power {i} out of range for rank {b.rank}")
    rank = comb(b.rank, i)
    top = min(rank, b.ring.dim)
    parts = wedge_formula(b.rank, i, top)
    classes = _evaluate(parts[1:], list(b.chern), b.ring)
    classes += [b.ring.zero()] * (rank - len(classes))
    return FormalBundle(b.ring, rank, classes)


def chern_of_tensor(b: FormalBundle, f: FormalBundle) -> FormalBundle:
    if b.ring is not f.ring:
        raise RingMismatch("bundles live in different rings")
    rank = b.rank * f.rank
    top = min(rank, b.ring.dim)
    parts = tensor_formula(b.rank, f.rank, top)
    classes = _evaluate(parts[1:], list(b.chern) + list(f.chern), b.ring)
    classes += [b.ring.zero()] * (rank - len(classes))
    return FormalBundle(b.ring, rank, classes)


def direct_sum(b: FormalBundle, f: FormalBundle) -> FormalBundle:
    """Whitney sum: total classes multiply."""
    total = total_mul(b.total(), f.total())
    return FormalBundle.from_total(b.ring, b.rank + f.rank, total)


def chern_character(b: FormalBundle, dim: int = None):
    """``rank + sum_m S_m(roots)``, expressed through ``P_m`` in the Chern classes."""
    ring = b.ring
    dim = ring.dim if dim is None else dim
    result = ring.one() * b.rank
    sigmas = [b.c(k) for k in range(1, dim + 1)]
    for m in range(1, dim + 1):
        result = result + newton_from_elementary(m, sigmas[:m])
    return result


def todd_series(b: FormalBundle, dim: int = None):
    """``prod x_i / (1 - e^{-x_i})`` truncated at ``dim``."""
    ring = b.ring
    dim = ring.dim if dim is None else dim
    parts = todd_formula(b.rank, dim)
    result = ring.zero()
    for cls in _evaluate(parts, list(b.chern), ring):
        result = result + cls
    return result
