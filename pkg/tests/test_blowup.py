import json
from pathlib import Path

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from bcblow.blowup import (BlowupRing, EmbeddingData, FreeZeta, alpha_binomial_form, alpha_division_form,
                           appendix_suite, blowup_chern_character, blowup_total_chern, eq_426_431_suite,
                           point_center_text, theorem_components)
from bcblow.errors import FormulaViolation, InconsistencyReport, ValidationError
from bcblow.gring import RingPresentation, module_map, ring_hom
from bcblow.manifest import PRESET_DIR, load_manifest
from bcblow.presets import NAMED, named_embedding, universal_embedding
from bcblow.symchern import FormalBundle

from oracles import alpha_sympy


@pytest.fixture(scope="module")
def surface():
    e = named_embedding("surface-point")
    return e, BlowupRing(e)


def generic_normal_bundle(r):
    ring = RingPresentation([(f"c{k}", k) for k in range(1, r + 1)], [], r + 2)
    return FormalBundle(ring, r, [ring.gen(f"c{k}") for k in range(1, r + 1)])


def test_exceptional_line_over_point(surface):
    _, R = surface
    exc = R.exc
    assert exc.zeta() * exc.zeta() == 0
    assert len(exc.basis()) == 2


def test_surface_alpha(surface):
    e, R = surface
    alpha = R.exc.from_free(alpha_division_form(e.N))
    assert alpha == R.exc.zeta() - 1


def test_point_alpha_binomial_shape():
    e = named_embedding("threefold-point")
    z = lambda *c: FreeZeta(e.ringX, [e.ringX.scalar(x) for x in c])
    # 1 + 3(zeta - 1) + 3(zeta^2 - zeta) + (zeta^3 - zeta^2)
    assert alpha_binomial_form(e.N) == z(-2, 0, 2, 1)


@pytest.mark.parametrize("r", [2, 3, 4])
def test_alpha_forms_agree_with_sympy_division(r):
    N = generic_normal_bundle(r)
    want, c = alpha_sympy(r)
    ours = alpha_division_form(N)
    assert ours == alpha_binomial_form(N)
    names = {f"c{k}": c[k] for k in range(1, r + 1)}
    for k in range(want.degree() + 1):
        text = str(ours.coeff(k))
        got = sp.sympify(text.replace("^", "**"), locals=names) if text != "0" else 0
        assert sp.expand(got - want.coeff_monomial(sp.Symbol("z") ** k)) == 0


def test_divide_by_zeta_trap():
    ring = RingPresentation([], [], 0)
    with pytest.raises(FormulaViolation):
        FreeZeta(ring, [ring.one()]).divide_by_zeta()


def test_formule_clef_on_surface(surface):
    e, R = surface
    point = R.pi_star(e.push(e.ringX.one()))
    assert R.j_push(R.exc.zeta()) == point


def test_self_intersection_of_exceptional_curve(surface):
    e, R = surface
    E = R.E()
    assert E * E == -R.pi_star(e.push(e.ringX.one()))
    assert R.j_pull(E) == -R.exc.zeta()


def test_surface_total_class(surface):
    e, R = surface
    diff = blowup_total_chern(e, R) - R.pi_star(e.tangentY)
    E = R.E()
    assert diff == -E - E * E
    assert point_center_text(diff) == "-E - E^2"


def test_threefold_point():
    e = named_embedding("threefold-point")
    R = BlowupRing(e)
    diff = blowup_total_chern(e, R) - R.pi_star(e.tangentY)
    E = R.E()
    assert E ** 3 == R.j_push(R.exc.zeta_power(2))
    assert diff.component(2) == 0
    assert diff.component(3) == E ** 3 * 2


def test_threefold_curve_identities():
    e = named_embedding("threefold-curve")
    R = BlowupRing(e)
    total = blowup_total_chern(e, R)
    y, E = e.tangentY, R.E()
    X = e.ringY.gen("X")
    assert total.component(2) == R.pi_star(y.component(2)) - R.pi_star(y.component(1)) * E + R.pi_star(X)
    zeta_x1 = R.exc.rho_pull(e.tangentX.component(1)) * R.exc.zeta()
    assert total.component(3) == R.pi_star(y.component(3)) + R.j_push(zeta_x1)


@pytest.mark.parametrize("name,top,euler", [("surface-point", "h^2", 4), ("threefold-point", "h^3", 6),
                                            ("threefold-curve", "h^3", 6)])
def test_euler_characteristic_of_projective_blowups(name, top, euler):
    m = load_manifest(PRESET_DIR / f"{name}.json")
    embed = next(e for k, e in m.embeddings.items() if k != "generic")
    R = BlowupRing(embed)
    total = blowup_total_chern(embed, R)
    assert total.component(embed.ringY.dim) == R.pi_star(embed.ringY.parse(f"{euler}*{top}"))


@pytest.mark.parametrize("r", [2, 3, 4])
def test_low_degree_components(r):
    report = theorem_components(universal_embedding(r + 2, r))
    assert report.passed, str(report)


@pytest.mark.parametrize("name", sorted(NAMED) + ["iwasawa"])
def test_appendix_and_equation_suites(name):
    e = named_embedding(name)
    assert appendix_suite(e).passed
    assert eq_426_431_suite(e).passed


@pytest.mark.parametrize("name", ["surface-point", "threefold-point", "threefold-curve", "universal-r2"])
def test_chern_character_with_exceptional_normal_bundle(name):
    report = blowup_chern_character(named_embedding(name))
    assert report.get("rem:ch-blowup[O_E(-1) normal]").passed
    assert report.get("sec5:Q_m-roundtrip").passed


def test_strict_chern_character_surfaces_inconsistency():
    with pytest.raises(InconsistencyReport) as info:
        blowup_chern_character(named_embedding("surface-point"), strict=True)
    assert not info.value.report.get("rem:ch-blowup").passed


def test_universal_mode_when_tangents_missing(caplog):
    e = named_embedding("surface-point")
    bare = EmbeddingData(e.ringY, e.ringX, e.r, e.pull, e.push, e.N, name="bare")
    total = blowup_total_chern(bare)
    assert total.ring.embed.tangentY is not None
    assert "universal" in caplog.text


def _point_data(push_target, shift, r=2):
    Y = RingPresentation([("h", 1)], ["h^3"], 2)
    pt = RingPresentation([], [], 0)
    return Y, pt, ring_hom(Y, pt, {"h": 0}), module_map(pt, Y, {"1": push_target}, shift)


def test_codimension_one_rejected():
    Y, pt, pull, push = _point_data("h", 1)
    with pytest.raises(ValidationError):
        EmbeddingData(Y, pt, 1, pull, push, FormalBundle.trivial(pt, 1))


def test_wrong_push_shift_rejected():
    Y, pt, pull, push = _point_data("h", 1)
    with pytest.raises(ValidationError):
        EmbeddingData(Y, pt, 2, pull, push, FormalBundle.trivial(pt, 2))


def test_rank_of_normal_bundle_checked():
    Y, pt, pull, push = _point_data("h^2", 2)
    with pytest.raises(ValidationError):
        EmbeddingData(Y, pt, 2, pull, push, FormalBundle.trivial(pt, 3))


blow_specs = st.lists(st.tuples(st.integers(0, 60), st.integers(-3, 3)), max_size=5)


def _blowup_element(R, spec):
    y = R.ringY.zero()
    slots = [R.ringX.zero() for _ in range(R.r - 1)]
    by, bx = R.ringY.basis(), R.ringX.basis()
    for i, c in spec:
        if i % 2 == 0:
            y = y + R.ringY.monomial(by[i % len(by)]) * c
        else:
            k = (i // 2) % (R.r - 1)
            slots[k] = slots[k] + R.ringX.monomial(bx[i % len(bx)]) * c
    return R.element(y, slots)


@pytest.mark.parametrize("name", ["threefold-curve", "universal-r3"])
@given(a=blow_specs, b=blow_specs, c=blow_specs)
def test_blowup_ring_axioms(name, a, b, c):
    R = BlowupRing(named_embedding(name))
    x, y, z = (_blowup_element(R, s) for s in (a, b, c))
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert R.j_pull(x * y) == R.j_pull(x) * R.j_pull(y)


@given(blow_specs)
def test_self_intersection_on_random_classes(spec):
    R = BlowupRing(named_embedding("universal-r3"))
    u = _blowup_element(R, spec).exceptional_part()
    assert R.j_pull(R.j_push(u)) == -R.exc.zeta() * u


def test_shipped_manifests_are_json():
    for path in Path(PRESET_DIR).glob("*.json"):
        json.loads(path.read_text())
