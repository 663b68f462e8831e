import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from bcblow.errors import (BasisIncomplete, DegreeMismatch, RelationNotHomogeneous, RingMismatch,
                           ValidationError)
from bcblow.gring import RingPresentation, module_map, projection_formula_check, ring_hom
from bcblow.presets import named_embedding


@pytest.fixture(scope="module")
def p2():
    return RingPresentation([("h", 1)], ["h^3"], 2)


def test_truncated_polynomial_ring(p2):
    h = p2.gen("h")
    assert h * h ** 2 == 0
    assert [p2.monomial_text(m) for m in p2.basis()] == ["1", "h", "h^2"]


def test_dimension_truncation_without_relations():
    ring = RingPresentation([("h", 1)], [], 2)
    assert ring.gen("h") ** 3 == 0
    assert ring.gen("h") ** 2 != 0


def test_projective_line_bundle_basis():
    # P(O + O) over a point: zeta^2 = 0
    ring = RingPresentation([("z", 1)], ["z^2"], 1)
    assert len(ring.basis()) == 2


def test_inhomogeneous_relation_rejected():
    with pytest.raises(RelationNotHomogeneous):
        RingPresentation([("h", 1)], ["h^2 - h"], 2)


def test_component_and_homogeneity(p2):
    c = p2.parse("1 + 3*h + 3*h^2")
    assert c.component(1) == p2.parse("3*h")
    assert c.component(1).is_homogeneous(1)
    assert not c.is_homogeneous(1)


def test_mixing_rings_is_an_error(p2):
    other = RingPresentation([("h", 1)], ["h^3"], 2)
    with pytest.raises(RingMismatch):
        p2.gen("h") + other.gen("h")


def test_groebner_completion_against_sympy():
    # a^2 - b^2 and ab: the completion adds b^3
    ring = RingPresentation([("a", 1), ("b", 1)], ["a^2 - b^2", "a*b"], 6)
    a, b = sp.symbols("a b")
    G = sp.groebner([a ** 2 - b ** 2, a * b], a, b, order="grlex", domain="QQ")
    rng = random.Random(7)
    for _ in range(30):
        terms = {(rng.randint(0, 3), rng.randint(0, 3)): Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                 for _ in range(4)}
        expr = sum(sp.Rational(c.numerator, c.denominator) * a ** i * b ** j for (i, j), c in terms.items())
        _, rem = G.reduce(sp.expand(expr))
        want = {}
        for (i, j), c in sp.Poly(rem, a, b).terms():
            want[(i, j)] = Fraction(int(c.p), int(c.q))
        assert ring.element(terms).terms == {m: c for m, c in want.items() if c}


elements = st.lists(st.tuples(st.integers(0, 40), st.integers(-4, 4)), max_size=6)


def _element(ring, spec):
    basis = ring.basis()
    out = ring.zero()
    for i, c in spec:
        out = out + ring.monomial(basis[i % len(basis)]) * c
    return out


@given(elements, elements, elements)
def test_ring_axioms_universal(sa, sb, sc):
    ring = named_embedding("universal-r2").ringY
    a, b, c = (_element(ring, s) for s in (sa, sb, sc))
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(elements, st.randoms(use_true_random=False))
def test_normal_form_is_confluent(spec, rnd):
    ring = named_embedding("threefold-curve").ringY
    raw = {}
    for i, c in spec:
        m = tuple((i * (k + 3)) % 3 for k in range(ring.nvars))
        raw[m] = raw.get(m, 0) + c
    raw = {m: c for m, c in raw.items() if c}
    assert ring.reduce(raw, rnd) == ring.reduce(raw)


def test_ring_hom_must_kill_relations(p2):
    line = RingPresentation([("l", 1)], ["l^2"], 1)
    with pytest.raises(ValidationError):
        ring_hom(RingPresentation([("h", 1)], ["h^2"], 2), p2, {"h": "h"})
    assert ring_hom(p2, line, {"h": "l"})(p2.parse("1 + h")) == line.parse("1 + l")


def test_ring_hom_degree_check(p2):
    with pytest.raises(DegreeMismatch):
        ring_hom(p2, p2, {"h": "h^2"})


def test_module_map_missing_basis(p2):
    pt = RingPresentation([("l", 1)], ["l^2"], 1)
    push = module_map(pt, p2, {"1": "h"}, 1)
    with pytest.raises(BasisIncomplete):
        push(pt.gen("l"))


def test_projection_formula_point_in_surface(p2):
    pt = RingPresentation([], [], 0)
    pull = ring_hom(p2, pt, {"h": 0})
    assert projection_formula_check(pull, module_map(pt, p2, {"1": "h^2"}, 2)).passed


def test_projection_formula_counterexample(p2):
    pt = RingPresentation([], [], 0)
    pull = ring_hom(p2, pt, {"h": 0})
    report = projection_formula_check(pull, module_map(pt, p2, {"1": "h"}, 1))
    assert not report.passed
    assert report.counterexample["b"] == "h" and report.counterexample["a"] == "1"
