"""Universal and named embeddings.

In the universal embedding ``i: X -> Y`` of codimension ``r`` in dimension ``n``
the Chern classes of ``X`` and ``N`` are free generators of ``H(X)`` and
``H(Y)`` is generated by ``c(Y)`` and one class ``i_* m`` per basis monomial
``m`` of ``H(X)``. Every identity that holds here holds for every embedding.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional, Tuple

from .blowup import EmbeddingData
from .gring import RingPresentation, module_map, ring_hom
from .symchern import FormalBundle

NAMED = {
    "surface-point": (2, 2),
    "threefold-point": (3, 3),
    "threefold-curve": (3, 2),
    "universal-r2": (4, 2),
    "universal-r3": (5, 3),
}


def push_generator_name(ringX: RingPresentation, m) -> str:
    if not any(m):
        return "X"
    parts = []
    for name, e in zip(ringX.names, m):
        parts.extend([name] * e)
    return "X_" + "_".join(parts)


def universal_embedding(n: int, r: int, extra_bundles: Optional[Dict[str, int]] = None,
                        name: str = "") -> EmbeddingData:
    return _universal(n, r, tuple(sorted((extra_bundles or {}).items())), name or f"universal(n={n}, r={r})")


@lru_cache(maxsize=None)
def _universal(n: int, r: int, extras: Tuple[Tuple[str, int], ...], name: str) -> EmbeddingData:
    if r < 2 or r > n:
        raise ValueError("need 2 <= r <= n")
    dx = n - r
    gensX = [(f"x{a}", a) for a in range(1, dx + 1)] + [(f"n{k}", k) for k in range(1, min(r, dx) + 1)]
    for label, rank in extras:
        gensX += [(f"{label}{k}", k) for k in range(1, min(rank, dx) + 1)]
    ringX = RingPresentation(gensX, (), dx)
    basisX = sorted(ringX.basis(), key=lambda m: (ringX.degree_of(m), tuple(-e for e in m)))
    push_names = {m: push_generator_name(ringX, m) for m in basisX}

    x = [ringX.one()] + [ringX.gen(f"x{a}") for a in range(1, dx + 1)]
    nc = [ringX.one()] + [ringX.gen(f"n{k}") if k <= dx else ringX.zero() for k in range(1, r + 1)]

    def x_(a):
        return x[a] if a < len(x) else ringX.zero()

    def n_(k):
        return nc[k] if k < len(nc) else ringX.zero()

    # i^* c_i(Y) = sum_a c_a(X) c_{i-a}(N)
    pull_y = [sum((x_(a) * n_(i - a) for a in range(i + 1)), ringX.zero()) for i in range(n + 1)]

    def push_text(cls) -> str:
        terms = []
        for m, c in cls.terms.items():
            terms.append(f"({c})*{push_names[m]}")
        return " + ".join(terms) if terms else "0"

    gensY = [(f"y{i}", i) for i in range(1, n + 1)] + [(push_names[m], ringX.degree_of(m) + r) for m in basisX]
    relations = []
    for i in range(1, n + 1):
        for m in basisX:
            if i + ringX.degree_of(m) + r > n:
                continue
            rhs = push_text(pull_y[i] * ringX.monomial(m))
            relations.append(f"y{i}*{push_names[m]} - ({rhs})")
    for a, m in enumerate(basisX):
        for m2 in basisX[a:]:
            if ringX.degree_of(m) + ringX.degree_of(m2) + 2 * r > n:
                continue
            rhs = push_text(ringX.monomial(m) * ringX.monomial(m2) * n_(r))
            relations.append(f"{push_names[m]}*{push_names[m2]} - ({rhs})")
    ringY = RingPresentation(gensY, relations, n)

    pull_images = {f"y{i}": pull_y[i] for i in range(1, n + 1)}
    for m in basisX:
        pull_images[push_names[m]] = ringX.monomial(m) * n_(r)
    pull = ring_hom(ringY, ringX, pull_images)
    push = module_map(ringX, ringY, {m: ringY.gen(push_names[m]) for m in basisX}, r)
    N = FormalBundle(ringX, r, [n_(k) for k in range(1, r + 1)])
    tangentY = ringY.one() + sum((ringY.gen(f"y{i}") for i in range(1, n + 1)), ringY.zero())
    tangentX = sum(x, ringX.zero())
    bundles = {}
    for label, rank in extras:
        bundles[label] = FormalBundle(ringX, rank, [ringX.gen(f"{label}{k}") if k <= dx else ringX.zero()
                                                    for k in range(1, rank + 1)])
    return EmbeddingData(ringY, ringX, r, pull, push, N, tangentY, tangentX, name, bundles)


def named_embedding(name: str) -> EmbeddingData:
    if name == "iwasawa":
        from .nilbc import iwasawa_curve_embedding
        return iwasawa_curve_embedding()
    try:
        n, r = NAMED[name]
    except KeyError:
        raise KeyError(f"unknown preset {name!r}; choose from {sorted(NAMED) + ['iwasawa']}") from None
    return universal_embedding(n, r, name=name)
