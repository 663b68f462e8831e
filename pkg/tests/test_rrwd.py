import pytest

from bcblow.errors import RankMismatch
from bcblow.gring import RingPresentation
from bcblow.presets import universal_embedding
from bcblow.rrwd import (compute_f, defining_identity_holds, expected_constant_term, f_specialize,
                         rr_without_denominators)
from bcblow.symchern import FormalBundle

from oracles import f_by_linear_solve


def test_line_line_series_is_geometric():
    f = compute_f(1, 1, 3)
    # 1 / (1 + w - z) = sum (z - w)^k
    assert f.coeffs == {(0, 0): 1, (1, 0): 1, (0, 1): -1, (2, 0): 1, (1, 1): -2, (0, 2): 1,
                        (3, 0): 1, (2, 1): -3, (1, 2): 3, (0, 3): -1}


@pytest.mark.parametrize("u,v,degree", [(1, 2, 3), (2, 1, 3), (2, 2, 2), (3, 1, 2)])
def test_series_matches_linear_solve(u, v, degree):
    want = {m: int(c) for m, c in f_by_linear_solve(u, v, degree).items()}
    assert compute_f(u, v, degree).coeffs == want


@pytest.mark.parametrize("u", [1, 2, 3, 4])
@pytest.mark.parametrize("v", [0, 1, 2, 3])
def test_constant_term(u, v):
    assert compute_f(u, v, 3).constant_term() == expected_constant_term(u, v)


@pytest.mark.parametrize("u,v", [(2, 3), (3, 2), (3, 3)])
def test_defining_identity(u, v):
    f = compute_f(u, v, 4)
    assert all(isinstance(c, int) for c in f.coeffs.values())
    assert defining_identity_holds(f)


def test_table_rendering():
    text = compute_f(2, 1, 1).table()
    assert text.splitlines()[1] == "0\t1\t-1"


def test_specialize_rank_mismatch():
    ring = RingPresentation([("a", 1)], [], 2)
    with pytest.raises(RankMismatch):
        f_specialize(compute_f(2, 1, 2), FormalBundle.line(ring, ring.gen("a")), FormalBundle.line(ring, ring.gen("a")))


@pytest.mark.parametrize("r", [2, 3])
def test_pushforward_vanishing_and_top_term(r):
    embed = universal_embedding(r + 1, r, {"F": 2})
    total = rr_without_denominators(embed, embed.extras["F"]).value
    assert all(total.component(q).is_zero() for q in range(1, r))
    assert total.component(r) == embed.push(embed.ringX.one()) * expected_constant_term(r, 2)


def test_invalid_ranks():
    with pytest.raises(ValueError):
        compute_f(0, 1, 2)
