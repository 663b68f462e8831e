from fractions import Fraction
from itertools import combinations
from math import prod

import pytest
from hypothesis import given, strategies as st

from bcblow.errors import DegreeMismatch, NotSymmetric, NotUnital
from bcblow.gring import RingPresentation
from bcblow.symchern import (FormalBundle, TotalClass, chern_character, chern_of_dual, chern_of_tensor,
                             chern_of_wedge, direct_sum, elementary_from_newton, newton_from_elementary,
                             symmetric_reduce, todd_series, total_inv)

from oracles import elementary_numbers, power_sum_normalized

DEPTH = 6
T = RingPresentation([("t", 1)], [], DEPTH)


def root_bundle(roots):
    """Bundle on Q[t]/(t^7) whose Chern roots are ``a * t``."""
    t = T.gen("t")
    return FormalBundle(T, len(roots), [t ** k * elementary_numbers(roots, k) for k in range(1, len(roots) + 1)])


def total_from_roots(roots):
    t = T.gen("t")
    out = T.one()
    for a in roots:
        out = out * (1 + t * a)
    return out


roots = st.lists(st.integers(-4, 4), min_size=1, max_size=3)


@given(roots, roots)
def test_tensor_matches_roots(u, v):
    got = chern_of_tensor(root_bundle(u), root_bundle(v)).total().value
    assert got == total_from_roots([a + b for a in u for b in v])


@given(roots, st.data())
def test_wedge_matches_roots(u, data):
    i = data.draw(st.integers(0, len(u)))
    got = chern_of_wedge(root_bundle(u), i).total().value
    assert got == total_from_roots([sum(s) for s in combinations(u, i)])


@given(roots)
def test_dual_matches_roots(u):
    assert chern_of_dual(root_bundle(u)).total().value == total_from_roots([-a for a in u])


@given(roots, roots)
def test_whitney_sum(u, v):
    assert direct_sum(root_bundle(u), root_bundle(v)).total().value == total_from_roots(u + v)


@given(roots)
def test_chern_character_matches_power_sums(u):
    t = T.gen("t")
    ch = chern_character(root_bundle(u))
    want = T.scalar(len(u)) + sum((t ** m * power_sum_normalized(u, m) for m in range(1, DEPTH + 1)), T.zero())
    assert ch == want


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=DEPTH))
def test_newton_conversion_on_numbers(rs):
    for m in range(1, DEPTH + 1):
        sigmas = [elementary_numbers(rs, k) for k in range(1, m + 1)]
        assert newton_from_elementary(m, sigmas) == power_sum_normalized(rs, m)


def test_newton_round_trip_symbolic():
    ring = RingPresentation([(f"s{k}", k) for k in range(1, DEPTH + 1)], [], DEPTH)
    sigmas = [ring.gen(f"s{k}") for k in range(1, DEPTH + 1)]
    sums = [newton_from_elementary(m, sigmas) for m in range(1, DEPTH + 1)]
    for m in range(1, DEPTH + 1):
        assert elementary_from_newton(m, sums) == sigmas[m - 1]


def test_s2_of_small_example():
    assert newton_from_elementary(2, [3, 2]) == Fraction(5, 2)


def test_newton_rejects_inhomogeneous():
    ring = RingPresentation([("h", 1)], [], 3)
    with pytest.raises(DegreeMismatch):
        newton_from_elementary(2, [ring.parse("h + h^2"), ring.parse("h^2")])


def test_tensor_with_line_rank_two():
    ring = RingPresentation([("c1", 1), ("c2", 2), ("d", 1)], [], 4)
    E = FormalBundle(ring, 2, [ring.gen("c1"), ring.gen("c2")])
    L = FormalBundle.line(ring, ring.gen("d"))
    d = ring.gen("d")
    want = sum(((1 + d) ** i * E.c(2 - i) for i in range(3)), ring.zero())
    assert chern_of_tensor(E, L).total().value == want


def test_todd_classes():
    ring = RingPresentation([("c1", 1), ("c2", 2)], [], 2)
    td = todd_series(FormalBundle(ring, 2, [ring.gen("c1"), ring.gen("c2")]))
    assert td.component(2) == (ring.gen("c1") ** 2 + ring.gen("c2")) / 12
    line = RingPresentation([("d", 1)], [], 4)
    d = line.gen("d")
    assert todd_series(FormalBundle.line(line, d)) == 1 + d / 2 + d ** 2 / 12 - d ** 4 / 720


def test_total_class_must_be_unital():
    with pytest.raises(NotUnital):
        TotalClass(T.parse("2 + t"))


def test_total_inverse():
    t = T.gen("t")
    inv = total_inv(TotalClass(1 + t)).value
    assert inv == sum(((-t) ** k for k in range(DEPTH + 1)), T.zero())


def test_symmetric_reduce_rejects_asymmetric():
    with pytest.raises(NotSymmetric):
        symmetric_reduce({(1, 0): 1}, (2,))


def test_wedge_index_out_of_range():
    with pytest.raises(IndexError):
        chern_of_wedge(root_bundle([1, 2]), 3)
