"""JSON manifests: rings, bundles, embeddings, nilmanifolds and tasks.

Schema (every section optional except ``tasks``)::

    {
      "rings": {"P2": {"generators": [["h", 1]], "relations": ["h^3"], "dim": 2}},
      "bundles": {"N": {"ring": "pt", "rank": 2, "chern": ["0", "0"]}},
      "embeddings": {
        "P2-point": {"Y": "P2", "X": "pt", "r": 2, "pull": {"h": "0"},
                     "push": {"1": "h^2"}, "normal_bundle": "N",
                     "tangent_Y": "1 + 3*h + 3*h^2", "tangent_X": "1"},
        "generic": {"preset": "universal-r2", "extra_bundles": {"F": 2}}
      },
      "nilmanifolds": {"I3": {"n": 3, "d": {"3": [[-1, "1", "2"]]}},
                       "T2": {"preset": "torus-2"}},
      "tasks": [{"name": "chern", "op": "blowup-chern", "embedding": "P2-point",
                 "expect": {"difference": "-E - E^2"}}]
    }

Polynomial literals use the infix grammar of :mod:`bcblow.parser`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from . import blowup as B
from . import nilbc
from .errors import BCBlowError, ParseError
from .gring import RingPresentation, module_map, ring_hom
from .parser import parse_polynomial
from .presets import NAMED, named_embedding, universal_embedding
from .rrwd import compute_f, defining_identity_holds, expected_constant_term, rr_without_denominators
from .symchern import FormalBundle

PRESET_DIR = Path(__file__).with_name("manifests")


class ManifestError(BCBlowError):
    """Invalid manifest content; ``where`` names the offending object."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class Manifest:
    rings: Dict[str, RingPresentation] = field(default_factory=dict)
    bundles: Dict[str, FormalBundle] = field(default_factory=dict)
    embeddings: Dict[str, B.EmbeddingData] = field(default_factory=dict)
    nilmanifolds: Dict[str, nilbc.StructureEquations] = field(default_factory=dict)
    tasks: List[dict] = field(default_factory=list)
    source: str = ""


def _guard(where: str, fn: Callable, *args):
    try:
        return fn(*args)
    except ParseError as exc:
        raise ManifestError(where, f"parse error at {exc.line}:{exc.column}: {exc.args[0]}") from exc
    except ManifestError:
        raise
    except (BCBlowError, ValueError, KeyError, TypeError) as exc:
        raise ManifestError(where, str(exc)) from exc


def _lookup(table: dict, name: str, kind: str, where: str):
    if name not in table:
        raise ManifestError(where, f"unknown {kind} {name!r}")
    return table[name]


def _build_ring(spec: dict) -> RingPresentation:
    gens = [(str(g), int(d)) for g, d in spec["generators"]]
    return RingPresentation(gens, list(spec.get("relations", [])), int(spec["dim"]))


def _build_bundle(spec: dict, ring: RingPresentation) -> FormalBundle:
    rank = int(spec["rank"])
    if "total" in spec:
        return FormalBundle.from_total(ring, rank, ring.parse(str(spec["total"])))
    chern = [ring.parse(str(c)) for c in spec.get("chern", ["0"] * rank)]
    return FormalBundle(ring, rank, chern)


def _build_embedding(spec: dict, m: Manifest, where: str) -> B.EmbeddingData:
    if "preset" in spec:
        preset = spec["preset"]
        extras = spec.get("extra_bundles")
        if preset in NAMED:
            n, r = NAMED[preset]
            return universal_embedding(n, r, extras, name=preset) if extras else named_embedding(preset)
        if preset == "universal":
            return universal_embedding(int(spec["n"]), int(spec["r"]), extras)
        return named_embedding(preset)
    Y = _lookup(m.rings, spec["Y"], "ring", where)
    X = _lookup(m.rings, spec["X"], "ring", where)
    r = int(spec["r"])
    pull = ring_hom(Y, X, {k: X.parse(str(v)) for k, v in spec["pull"].items()})
    push = module_map(X, Y, {k: Y.parse(str(v)) for k, v in spec["push"].items()}, r)
    if "normal_bundle" in spec:
        N = _lookup(m.bundles, spec["normal_bundle"], "bundle", where)
    else:
        N = FormalBundle.trivial(X, r)
    tY = Y.parse(str(spec["tangent_Y"])) if "tangent_Y" in spec else None
    tX = X.parse(str(spec["tangent_X"])) if "tangent_X" in spec else None
    extras = {name: _lookup(m.bundles, name, "bundle", where) for name in spec.get("bundles", [])}
    return B.EmbeddingData(Y, X, r, pull, push, N, tY, tX, spec.get("name", where.split(".")[-1]), extras)


def _build_nilmanifold(spec: dict, name: str) -> nilbc.StructureEquations:
    if "preset" in spec:
        return nilbc.nilmanifold(spec["preset"])
    return nilbc.StructureEquations.from_terms(int(spec["n"]), spec.get("d", {}), name)


def parse_manifest(text: str, source: str = "<manifest>") -> Manifest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: {exc.msg}", exc.lineno, exc.colno) from exc
    if not isinstance(data, dict):
        raise ManifestError(source, "top level must be an object")
    m = Manifest(source=source)
    for name, spec in data.get("rings", {}).items():
        m.rings[name] = _guard(f"rings.{name}", _build_ring, spec)
    for name, spec in data.get("bundles", {}).items():
        where = f"bundles.{name}"
        ring = _lookup(m.rings, spec.get("ring", ""), "ring", where)
        m.bundles[name] = _guard(where, _build_bundle, spec, ring)
    for name, spec in data.get("embeddings", {}).items():
        where = f"embeddings.{name}"
        m.embeddings[name] = _guard(where, _build_embedding, spec, m, where)
    for name, spec in data.get("nilmanifolds", {}).items():
        m.nilmanifolds[name] = _guard(f"nilmanifolds.{name}", _build_nilmanifold, spec, name)
    tasks = data.get("tasks", [])
    seen = set()
    for i, task in enumerate(tasks):
        where = f"tasks[{i}]"
        if "op" not in task:
            raise ManifestError(where, "missing 'op'")
        if task["op"] not in TASKS:
            raise ManifestError(where, f"unknown task op {task['op']!r}; choose from {sorted(TASKS)}")
        task.setdefault("name", f"{task['op']}-{i}")
        if task["name"] in seen:
            raise ManifestError(where, f"duplicate task name {task['name']!r}")
        seen.add(task["name"])
        for key, table, kind in (("embedding", m.embeddings, "embedding"),
                                 ("nilmanifold", m.nilmanifolds, "nilmanifold")):
            if key in task:
                _lookup(table, task[key], kind, where)
    m.tasks = tasks
    return m


def load_manifest(path) -> Manifest:
    path = Path(path)
    return parse_manifest(path.read_text(), str(path))


def preset_manifest_path(name: str) -> Path:
    path = PRESET_DIR / f"{name}.json"
    if not path.exists():
        names = sorted(p.stem for p in PRESET_DIR.glob("*.json"))
        raise KeyError(f"unknown preset {name!r}; choose from {names}")
    return path


# ---------------------------------------------------------------------------
# tasks; each returns a JSON-ready dict with "checks" and "classes"


def _result(report: B.Report, task: dict) -> dict:
    informational = set(task.get("informational", []))
    checks = []
    for c in report.checks:
        entry = c.to_json()
        entry["informational"] = c.label in informational
        checks.append(entry)
    passed = all(c["passed"] for c in checks if not c["informational"])
    return {"task": task["name"], "op": task["op"], "passed": passed, "checks": checks,
            "classes": report.classes}


def _blowup_expression(ring: B.BlowupRing, text: str) -> B.BlowupClass:
    """Polynomial in ``E`` and pulled-back generators of ``H(Y)``."""
    names = list(ring.ringY.names) + ["E"]
    poly = parse_polynomial(text, names)
    values = [ring.pi_star(g) for g in ring.ringY.gens()] + [ring.E()]
    from .poly import substitute
    return substitute(poly, values, ring.one(), ring.zero())


def task_rr_series(m: Manifest, task: dict) -> dict:
    u, v, degree = int(task["u"]), int(task["v"]), int(task.get("degree", 3))
    f = compute_f(u, v, degree)
    report = B.Report(f"rr-series u={u} v={v}")
    report.add("constant-term", f.constant_term() == expected_constant_term(u, v),
               f"{f.constant_term()} vs {expected_constant_term(u, v)}")
    report.add("defining-identity", defining_identity_holds(f))
    report.classes = {"f": str(f), "table": f.to_json()["terms"]}
    return _result(report, task)


def task_rr_pushforward(m: Manifest, task: dict) -> dict:
    embed = m.embeddings[task["embedding"]]
    F = embed.extras.get(task["bundle"]) or m.bundles.get(task["bundle"])
    if F is None:
        raise ManifestError(f"task {task['name']}", f"unknown bundle {task['bundle']!r}")
    total = rr_without_denominators(embed, F).value
    r = embed.r
    report = B.Report(f"c(i_* {task['bundle']})")
    for q in range(1, r):
        report.add(f"vanishing c_{q}", total.component(q).is_zero(), str(total.component(q)))
    top = embed.push(embed.ringX.one()) * expected_constant_term(r, F.rank)
    report.add(f"c_{r} = (-1)^(r-1) (r-1)! rank [X]", total.component(r) == top, str(total.component(r)))
    report.classes = {"total": str(total)}
    return _result(report, task)


def task_blowup_chern(m: Manifest, task: dict) -> dict:
    embed = m.embeddings[task["embedding"]]
    ring = B.BlowupRing(B._tangent_data(embed))
    embed = ring.embed
    total = B.blowup_total_chern(embed, ring)
    diff = total - ring.pi_star(embed.tangentY)
    report = B.theorem_components(embed)
    report.title = f"blow-up chern classes ({embed.name})"
    for key, text in sorted(task.get("expect", {}).items()):
        want = _blowup_expression(ring, text)
        if key == "difference":
            got = diff
        elif key.startswith("difference_"):
            got = diff.component(int(key.split("_")[1]))
        elif key.startswith("c_"):
            got = total.component(int(key.split("_")[1]))
        else:
            raise ManifestError(f"task {task['name']}", f"unknown expectation key {key!r}")
        report.add(f"expect {key} = {text}", got == want, "" if got == want else f"got {got}")
    report.classes["total"] = str(total)
    report.classes["difference"] = str(diff)
    as_e = B.point_center_text(diff)
    if as_e is not None:
        sign, body = ("-", as_e[1:]) if as_e.startswith("-") else ("+", as_e)
        report.classes["total_in_E"] = f"pi*c(Y) {sign} {body}" if as_e != "0" else "pi*c(Y)"
    return _result(report, task)


def task_blowup_identities(m: Manifest, task: dict) -> dict:
    embed = B._tangent_data(m.embeddings[task["embedding"]])
    report = B.Report(f"blow-up identities ({embed.name})")
    for sub in (B.appendix_suite(embed), B.eq_426_431_suite(embed), B.blowup_chern_character(embed)):
        report.checks.extend(sub.checks)
        report.classes.update(sub.classes)
    report.add("alpha division = binomial", B.alpha_division_form(embed.N) == B.alpha_binomial_form(embed.N))
    return _result(report, task)


def _form_from_spec(n: int, spec) -> nilbc.InvariantForm:
    if isinstance(spec, dict):
        return nilbc.monomial(n, spec.get("holo", []), spec.get("anti", []), spec.get("coeff", 1))
    coeffs: dict = {}
    for term in spec:
        f = nilbc.monomial(n, term.get("holo", []), term.get("anti", []), term.get("coeff", 1))
        coeffs = nilbc.form_add(coeffs, dict(f.coeffs))
    return nilbc.InvariantForm(n, coeffs)


def task_nilbc_dims(m: Manifest, task: dict) -> dict:
    se = m.nilmanifolds[task["nilmanifold"]]
    table = nilbc.bc_table(se)
    n = se.n
    report = B.Report(f"bott-chern dimensions ({se.name})")
    report.add("h^{p,q} = h^{q,p}", all(table[(p, q)] == table[(q, p)] for p, q in table))
    report.add("h^{n,n} >= 1", table[(n, n)] >= 1)
    for key, want in sorted(task.get("expect", {}).items()):
        p, q = (int(t) for t in key.split(","))
        report.add(f"h^{{{p},{q}}} = {want}", table[(p, q)] == want, f"got {table[(p, q)]}")
    report.classes = {"table": {f"{p},{q}": v for (p, q), v in sorted(table.items())},
                      "text": nilbc.format_table(table, n)}
    return _result(report, task)


def task_bc_exact(m: Manifest, task: dict) -> dict:
    se = m.nilmanifolds[task["nilmanifold"]]
    form = _form_from_spec(se.n, task["form"])
    res = nilbc.is_bc_exact(se, form)
    report = B.Report(f"ddbar-exactness of {form}")
    want = bool(task.get("expect_exact", True))
    report.add(f"exact == {want}", res.exact == want, str(res))
    if "expect_primitive" in task and res.exact:
        prim = _form_from_spec(se.n, task["expect_primitive"])
        report.add("primitive", dict(prim.coeffs) == res.primitive, nilbc.format_form(res.primitive, se.n))
    report.classes = {"form": str(form), "primitive": nilbc.format_form(res.primitive or {}, se.n)}
    return _result(report, task)


def task_iwasawa_blowup(m: Manifest, task: dict) -> dict:
    return _result(nilbc.iwasawa_blowup_check(), task)


TASKS: Dict[str, Callable[[Manifest, dict], dict]] = {
    "rr-series": task_rr_series,
    "rr-pushforward": task_rr_pushforward,
    "blowup-chern": task_blowup_chern,
    "blowup-identities": task_blowup_identities,
    "nilbc-dims": task_nilbc_dims,
    "bc-exact": task_bc_exact,
    "iwasawa-blowup": task_iwasawa_blowup,
}


def run_task(m: Manifest, task: dict) -> dict:
    try:
        return TASKS[task["op"]](m, task)
    except BCBlowError as exc:
        return {"task": task["name"], "op": task["op"], "passed": False,
                "error": f"{type(exc).__name__}: {exc}", "checks": [], "classes": {}}


def run_manifest(m: Manifest, task_filter: Optional[str] = None, parallel: bool = False) -> List[dict]:
    tasks = [t for t in m.tasks if task_filter is None or t["name"] == task_filter]
    if task_filter is not None and not tasks:
        raise ManifestError(m.source, f"no task named {task_filter!r}")
    if parallel:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor() as pool:
            return list(pool.map(lambda t: run_task(m, t), tasks))
    return [run_task(m, t) for t in tasks]


def dumps(result: Any) -> str:
    return json.dumps(result, sort_keys=True, ensure_ascii=False)
