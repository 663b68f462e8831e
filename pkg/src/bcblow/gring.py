"""Finitely presented graded-commutative rings over the rationals.

A ring is given by generators of positive degree, homogeneous relations and a
dimension bound ``dim``: every monomial of degree above ``dim`` is zero. The
constructor completes the relations to a Groebner basis truncated at ``dim``
(graded lex order, generators compared in declaration order), so normal forms
are unique and can be compared termwise.

Degree ``k`` stands for the Bott-Chern bidegree ``(k, k)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import poly as P
from .errors import (BasisIncomplete, DegreeMismatch, RelationNotHomogeneous, RingMismatch,
                     UnknownGenerator, ValidationError)
from .parser import format_polynomial, parse_polynomial

Scalar = Union[int, Fraction]


class RingPresentation:
    def __init__(self, generators: Sequence[Tuple[str, int]], relations: Sequence = (), dim: int = 0):
        names = [g[0] for g in generators]
        if len(set(names)) != len(names):
            raise ValueError(f"generator names must be distinct: {names}")
        for name, deg in generators:
            if not isinstance(deg, int) or deg <= 0:
                raise ValueError(f"generator {name!r} needs a positive integer degree")
        if dim < 0:
            raise ValueError("dim must be nonnegative")
        self.names: Tuple[str, ...] = tuple(names)
        self.weights: Tuple[int, ...] = tuple(g[1] for g in generators)
        self.dim = dim
        self.nvars = len(names)
        polys = [self._as_poly(r) for r in relations]
        for text, p in zip(relations, polys):
            if len(P.degrees(p, self.weights)) > 1:
                raise RelationNotHomogeneous(f"relation {text!r} is not homogeneous")
        self.relations: Tuple[P.Poly, ...] = tuple(p for p in polys if p)
        self.groebner: List[P.Poly] = self._complete(self.relations)
        self._leads = [self._lead(g) for g in self.groebner]
        self._one = GradedClass(self, {(0,) * self.nvars: 1}, _checked=True)
        self._basis: Optional[Tuple[P.Monomial, ...]] = None

    def __repr__(self):
        gens = ", ".join(f"{n}:{w}" for n, w in zip(self.names, self.weights))
        return f"RingPresentation([{gens}], {len(self.relations)} relations, dim={self.dim})"

    # -- polynomial plumbing -------------------------------------------------
    def _as_poly(self, rel) -> P.Poly:
        if isinstance(rel, str):
            return parse_polynomial(rel, self.names)
        if isinstance(rel, GradedClass):
            return dict(rel.terms)
        out = {}
        for m, c in dict(rel).items():
            if len(m) != self.nvars:
                raise UnknownGenerator(f"monomial {m} has the wrong number of variables")
            if c:
                out[tuple(m)] = c
        return out

    def degree_of(self, m: P.Monomial) -> int:
        return P.mono_degree(m, self.weights)

    def _lead(self, p: P.Poly) -> P.Monomial:
        return max(p, key=self._order_key)

    def _order_key(self, m: P.Monomial):
        return (P.mono_degree(m, self.weights), m)

    def _monic(self, p: P.Poly) -> P.Poly:
        c = p[self._lead(p)]
        return {m: P.normalize(Fraction(v) / c) for m, v in p.items()}

    def _truncate(self, p: P.Poly) -> P.Poly:
        return {m: c for m, c in p.items() if self.degree_of(m) <= self.dim}

    def _reduce_with(self, p: P.Poly, basis: Sequence[P.Poly], leads: Sequence[P.Monomial],
                     rng: Optional[random.Random] = None) -> P.Poly:
        p = self._truncate(p)
        while True:
            candidates = [(m, k) for m in p for k, lead in enumerate(leads) if P.mono_divides(lead, m)]
            if not candidates:
                return p
            if rng is None:
                m = max((c[0] for c in candidates), key=self._order_key)
                k = next(k for mm, k in candidates if mm == m)
            else:
                m, k = rng.choice(candidates)
            g = basis[k]
            factor = P.mono_div(m, leads[k])
            coeff = p[m]
            for gm, gc in g.items():
                t = P.mono_mul(gm, factor)
                v = p.get(t, 0) - coeff * gc
                if v:
                    p[t] = P.normalize(v)
                else:
                    p.pop(t, None)

    def _complete(self, relations: Sequence[P.Poly]) -> List[P.Poly]:
        """Buchberger completion, ignoring every S-pair above ``dim``."""
        basis = [self._monic(r) for r in relations if self.degree_of(next(iter(r))) <= self.dim]
        leads = [self._lead(g) for g in basis]
        pairs = list(combinations(range(len(basis)), 2))
        while pairs:
            i, j = pairs.pop()
            li, lj = leads[i], leads[j]
            lcm = P.mono_lcm(li, lj)
            if self.degree_of(lcm) > self.dim:
                continue
            if all(a == 0 or b == 0 for a, b in zip(li, lj)):
                continue
            s = P.add({P.mono_mul(m, P.mono_div(lcm, li)): c for m, c in basis[i].items()},
                      {P.mono_mul(m, P.mono_div(lcm, lj)): c for m, c in basis[j].items()}, -1)
            h = self._reduce_with(s, basis, leads)
            if h:
                basis.append(self._monic(h))
                leads.append(self._lead(basis[-1]))
                pairs.extend((k, len(basis) - 1) for k in range(len(basis) - 1))
        # minimal, then fully reduced
        keep = [k for k in range(len(basis))
                if not any(P.mono_divides(leads[o], leads[k]) and (leads[o] != leads[k] or o < k)
                           for o in range(len(basis)) if o != k)]
        basis = [basis[k] for k in keep]
        leads = [leads[k] for k in keep]
        reduced = []
        for k, g in enumerate(basis):
            others = [basis[o] for o in range(len(basis)) if o != k]
            other_leads = [leads[o] for o in range(len(basis)) if o != k]
            tail = {m: c for m, c in g.items() if m != leads[k]}
            tail = self._reduce_with(tail, others, other_leads)
            tail[leads[k]] = 1
            reduced.append(tail)
        reduced.sort(key=lambda g: self._order_key(self._lead(g)))
        return reduced

    def reduce(self, p: P.Poly, rng: Optional[random.Random] = None) -> P.Poly:
        """Normal form of a raw polynomial. ``rng`` randomizes the rewrite order."""
        return self._reduce_with(dict(p), self.groebner, self._leads, rng)

    # -- elements ------------------------------------------------------------
    def element(self, p: Union[P.Poly, str]) -> "GradedClass":
        return GradedClass(self, self.reduce(self._as_poly(p)), _checked=True)

    def parse(self, text: str) -> "GradedClass":
        return self.element(text)

    def gen(self, name: str) -> "GradedClass":
        if name not in self.names:
            raise UnknownGenerator(name)
        return self.element({P.unit(self.nvars, self.names.index(name)): 1})

    def gens(self) -> List["GradedClass"]:
        return [self.gen(n) for n in self.names]

    def one(self) -> "GradedClass":
        return self._one

    def zero(self) -> "GradedClass":
        return GradedClass(self, {}, _checked=True)

    def scalar(self, c: Scalar) -> "GradedClass":
        return GradedClass(self, {(0,) * self.nvars: c} if c else {}, _checked=True)

    def monomial(self, m: P.Monomial) -> "GradedClass":
        return self.element({tuple(m): 1})

    def is_standard(self, m: P.Monomial) -> bool:
        return self.degree_of(m) <= self.dim and not any(P.mono_divides(l, m) for l in self._leads)

    def basis(self, degree: Optional[int] = None) -> Tuple[P.Monomial, ...]:
        """Standard monomials (a rational basis of the ring), optionally of one degree."""
        if self._basis is None:
            monos = [m for m in P.monomials_up_to(self.weights, self.dim) if self.is_standard(m)]
            monos.sort(key=lambda m: (self.degree_of(m), tuple(-e for e in m)))
            self._basis = tuple(monos)
        if degree is None:
            return self._basis
        return tuple(m for m in self._basis if self.degree_of(m) == degree)

    def monomial_text(self, m: P.Monomial) -> str:
        return format_polynomial({m: 1}, self.names)

    def parse_monomial(self, text: str) -> P.Monomial:
        p = parse_polynomial(text, self.names)
        if len(p) != 1 or next(iter(p.values())) != 1:
            raise ValueError(f"{text!r} is not a monomial")
        return next(iter(p))


class GradedClass:
    """An element of a :class:`RingPresentation`, always kept in normal form."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingPresentation, terms: P.Poly, _checked: bool = False):
        self.ring = ring
        self.terms: P.Poly = terms if _checked else ring.reduce(terms)

    # arithmetic
    def _coerce(self, other) -> "GradedClass":
        if isinstance(other, GradedClass):
            if other.ring is not self.ring:
                raise RingMismatch("classes live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GradedClass(self.ring, P.add(self.terms, other.terms), _checked=True)

    __radd__ = __add__

    def __neg__(self):
        return GradedClass(self.ring, P.scale(self.terms, -1), _checked=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GradedClass(self.ring, P.add(self.terms, other.terms, -1), _checked=True)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedClass(self.ring, {m: P.normalize(c * other) for m, c in self.terms.items()}
                               if other else {}, _checked=True)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        r = self.ring
        prod = P.mul(self.terms, other.terms, r.weights, r.dim)
        return GradedClass(r, r.reduce(prod), _checked=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, e: int):
        result = self.ring.one()
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        if not isinstance(other, GradedClass):
            return NotImplemented
        return self.ring is other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((id(self.ring), frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # grading
    def component(self, k: int) -> "GradedClass":
        return GradedClass(self.ring, {m: c for m, c in self.terms.items()
                                       if self.ring.degree_of(m) == k}, _checked=True)

    def components(self) -> Dict[int, "GradedClass"]:
        return {k: self.component(k) for k in sorted(P.degrees(self.terms, self.ring.weights))}

    def is_homogeneous(self, k: int) -> bool:
        return all(self.ring.degree_of(m) == k for m in self.terms)

    def constant(self) -> Fraction:
        return Fraction(self.terms.get((0,) * self.ring.nvars, 0))

    def coefficient(self, m: P.Monomial) -> Fraction:
        return Fraction(self.terms.get(tuple(m), 0))

    def __str__(self):
        r = self.ring
        return format_polynomial(self.terms, r.names,
                                 order=lambda m: (r.degree_of(m), tuple(-e for e in m)))

    def __repr__(self):
        return f"GradedClass({self})"


def ring_new(generators: Sequence[Tuple[str, int]], relations: Sequence = (), dim: int = 0) -> RingPresentation:
    return RingPresentation(generators, relations, dim)


def class_mul(a: GradedClass, b: GradedClass) -> GradedClass:
    if a.ring is not b.ring:
        raise RingMismatch("classes live in different rings")
    return a * b


def class_component(a: GradedClass, k: int) -> GradedClass:
    return a.component(k)


# ---------------------------------------------------------------------------
# linear maps


@dataclass(frozen=True)
class LinearRingMap:
    """Ring homomorphism (images per generator) or module map (images per basis monomial)."""

    source: RingPresentation
    target: RingPresentation
    kind: str
    images: Mapping
    degree_shift: int = 0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, a: GradedClass) -> GradedClass:
        return map_apply(self, a)


def _coerce_image(target: RingPresentation, value) -> GradedClass:
    if isinstance(value, GradedClass):
        if value.ring is not target:
            raise RingMismatch("image lives in the wrong ring")
        return value
    if isinstance(value, (int, Fraction)):
        return target.scalar(value)
    return target.element(value)


def ring_hom(source: RingPresentation, target: RingPresentation,
             images: Mapping[str, object]) -> LinearRingMap:
    """Homomorphism given by generator images; validated on relations and products."""
    for name in images:
        if name not in source.names:
            raise UnknownGenerator(name)
    imgs = {}
    for name, deg in zip(source.names, source.weights):
        img = _coerce_image(target, images.get(name, 0))
        if not img.is_homogeneous(deg) and img:
            raise DegreeMismatch(f"image of {name} is not homogeneous of degree {deg}")
        imgs[name] = img
    m = LinearRingMap(source, target, "ring-homomorphism", imgs, 0)
    _check_homomorphism(m)
    return m


def _check_homomorphism(m: LinearRingMap):
    src = m.source
    for g in src.groebner:
        if _substitute(m, g):
            raise ValidationError(f"relation {format_polynomial(g, src.names)} does not map to zero")
    # monomials killed by truncation in the source must die in the target
    for i in range(src.nvars):
        for mono in src.basis():
            bumped = P.mono_mul(mono, P.unit(src.nvars, i))
            if src.degree_of(bumped) > src.dim and _substitute(m, {bumped: 1}):
                raise ValidationError("truncation of the source is not respected by the images")
    gens = src.gens()
    for a, b in combinations(range(src.nvars), 2):
        ga, gb = gens[a], gens[b]
        if map_apply(m, ga * gb) != map_apply(m, ga) * map_apply(m, gb):
            raise ValidationError("map does not preserve products of generators")


def _substitute(m: LinearRingMap, p: P.Poly) -> GradedClass:
    values = [m.images[n] for n in m.source.names]
    return P.substitute(p, values, m.target.one(), m.target.zero())


def module_map(source: RingPresentation, target: RingPresentation,
               images: Mapping[object, object], degree_shift: int) -> LinearRingMap:
    """Linear map given on normal-form monomials (keys: exponent tuples or monomial text)."""
    imgs = {}
    for key, value in images.items():
        mono = source.parse_monomial(key) if isinstance(key, str) else tuple(key)
        if not source.is_standard(mono):
            raise ValidationError(f"{source.monomial_text(mono)} is not a basis monomial")
        img = _coerce_image(target, value)
        want = source.degree_of(mono) + degree_shift
        if img and not img.is_homogeneous(want):
            raise DegreeMismatch(f"image of {source.monomial_text(mono)} must have degree {want}")
        imgs[mono] = img
    return LinearRingMap(source, target, "module-map", imgs, degree_shift)


def identity_map(ring: RingPresentation) -> LinearRingMap:
    return ring_hom(ring, ring, {n: ring.gen(n) for n in ring.names})


def map_apply(m: LinearRingMap, a: GradedClass) -> GradedClass:
    if a.ring is not m.source:
        raise RingMismatch("class does not live in the source of the map")
    if m.kind == "ring-homomorphism":
        return _substitute(m, a.terms)
    out = m.target.zero()
    for mono, c in a.terms.items():
        if mono not in m.images:
            raise BasisIncomplete(f"map has no image for {m.source.monomial_text(mono)}")
        out = out + m.images[mono] * c
    return out


def is_complete(m: LinearRingMap) -> bool:
    return m.kind == "ring-homomorphism" or all(b in m.images for b in m.source.basis())


@dataclass
class ProjectionReport:
    passed: bool
    checked: int
    counterexample: Optional[dict] = None

    def __str__(self):
        if self.passed:
            return f"projection formula: pass ({self.checked} pairs)"
        ce = self.counterexample
        return (f"projection formula: FAIL at b={ce['b']}, a={ce['a']}: "
                f"push(pull(b)*a)={ce['lhs']} but b*push(a)={ce['rhs']}")


def projection_formula_check(pull: LinearRingMap, push: LinearRingMap) -> ProjectionReport:
    """Check ``push(pull(b) * a) == b * push(a)`` over basis monomials ``b`` of the
    base and ``a`` of the source of ``push``."""
    base, sub = pull.source, pull.target
    if push.source is not sub or push.target is not base:
        raise RingMismatch("pull and push are not between the same two rings")
    checked = 0
    for bm in base.basis():
        b = base.monomial(bm)
        pb = pull(b)
        for am in sub.basis():
            a = sub.monomial(am)
            try:
                lhs = push(pb * a)
                rhs = b * push(a)
            except BasisIncomplete as exc:
                return ProjectionReport(False, checked, {"b": str(b), "a": str(a), "lhs": str(exc), "rhs": "?"})
            checked += 1
            if lhs != rhs:
                return ProjectionReport(False, checked, {"b": str(b), "a": str(a),
                                                         "lhs": str(lhs), "rhs": str(rhs)})
    return ProjectionReport(True, checked)
