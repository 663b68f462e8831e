"""Bott-Chern cohomology of nilmanifolds computed on invariant forms.

Generators ``0..n-1`` stand for ``w^1..w^n`` (type (1,0)) and ``n..2n-1`` for
their conjugates. A form is a dict from increasing index tuples to Gaussian
rationals; a monomial ``w^I ^ wbar^J`` is written ``w^{I|J}`` in text output.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from . import linalg
from .errors import NotAClass, NotIntegrable, ValidationError

Index = Tuple[int, ...]


class GaussQ:
    """Exact ``a + b*i`` with rational ``a``, ``b``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, x) -> "GaussQ":
        if isinstance(x, GaussQ):
            return x
        if isinstance(x, (list, tuple)):
            return cls(Fraction(x[0]), Fraction(x[1]))
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact; pass [re, im]")
        return cls(Fraction(x))

    def __add__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussQ(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussQ.coerce(o))

    def __rsub__(self, o):
        return GaussQ.coerce(o) - self

    def __mul__(self, o):
        o = GaussQ.coerce(o)
        return GaussQ(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GaussQ.coerce(o)
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussQ(o.re / norm, -o.im / norm)

    def conjugate(self) -> "GaussQ":
        return GaussQ(self.re, -self.im)

    def __eq__(self, o):
        try:
            o = GaussQ.coerce(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re} {sign} {abs(self.im)}*i)"

    __repr__ = __str__

    def to_json(self):
        return [str(self.re), str(self.im)]


ZERO, ONE = GaussQ(0), GaussQ(1)
Form = Dict[Index, GaussQ]


def _sort_sign(idx: Sequence[int]) -> Tuple[int, Optional[Index]]:
    """Sign of the sorting permutation, or ``(0, None)`` on a repeated index."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def _add_into(out: Form, key: Index, c: GaussQ):
    v = out.get(key, ZERO) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def wedge(a: Form, b: Form) -> Form:
    out: Form = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            sign, key = _sort_sign(ka + kb)
            if sign:
                _add_into(out, key, ca * cb * sign)
    return out


def form_add(a: Form, b: Form, scale=1) -> Form:
    out = dict(a)
    s = GaussQ.coerce(scale)
    for k, c in b.items():
        _add_into(out, k, c * s)
    return out


@dataclass(frozen=True)
class InvariantForm:
    n: int
    coeffs: Mapping[Index, GaussQ]

    def bidegrees(self) -> set:
        return {(sum(1 for i in k if i < self.n), sum(1 for i in k if i >= self.n)) for k in self.coeffs}

    def bidegree(self) -> Tuple[int, int]:
        degs = self.bidegrees()
        if len(degs) > 1:
            raise ValidationError(f"form mixes bidegrees {sorted(degs)}")
        return degs.pop() if degs else (0, 0)

    def __str__(self):
        return format_form(self.coeffs, self.n)


def monomial_text(key: Index, n: int) -> str:
    holo = "".join(str(i + 1) for i in key if i < n)
    anti = "".join(str(i - n + 1) for i in key if i >= n)
    return f"w^{{{holo}|{anti}}}"


def format_form(form: Mapping[Index, GaussQ], n: int) -> str:
    if not form:
        return "0"
    parts = []
    for key in sorted(form, key=lambda k: (len(k), k)):
        parts.append(f"{form[key]}*{monomial_text(key, n)}")
    return " + ".join(parts)


def parse_index(token: str, n: int) -> int:
    """``"2"`` is ``w^2``, ``"2b"`` is its conjugate."""
    token = str(token).strip()
    bar = token.endswith("b")
    k = int(token[:-1] if bar else token)
    if not 1 <= k <= n:
        raise ValidationError(f"generator index {token!r} out of range 1..{n}")
    return k - 1 + (n if bar else 0)


def monomial(n: int, holo: Sequence[int] = (), anti: Sequence[int] = (), coeff=1) -> InvariantForm:
    """``coeff * w^{holo} ^ wbar^{anti}`` with 1-based indices in the given order."""
    idx = [h - 1 for h in holo] + [a - 1 + n for a in anti]
    sign, key = _sort_sign(idx)
    return InvariantForm(n, {key: GaussQ.coerce(coeff) * sign} if sign else {})


def conjugate(form: Mapping[Index, GaussQ], n: int) -> Form:
    out: Form = {}
    for key, c in form.items():
        sign, k2 = _sort_sign([i + n if i < n else i - n for i in key])
        _add_into(out, k2, c.conjugate() * sign)
    return out


class StructureEquations:
    """``d w^k`` for each ``k`` as a combination of 2-forms.

    ``images[k]`` maps pairs of generator indices (0-based, bars shifted by ``n``)
    to coefficients. ``d wbar^k`` is the conjugate.
    """

    def __init__(self, n: int, images: Mapping[int, Mapping[Tuple[int, int], object]], name: str = ""):
        self.n = n
        self.name = name
        d: Dict[int, Form] = {}
        for k in range(n):
            form: Form = {}
            for pair, c in images.get(k, {}).items():
                sign, key = _sort_sign(pair)
                if len(pair) != 2 or max(pair) >= 2 * n:
                    raise ValidationError(f"bad index pair {pair}")
                if sign:
                    _add_into(form, key, GaussQ.coerce(c) * sign)
            d[k] = form
        for k in range(n):
            d[k + n] = conjugate(d[k], n)
        self.d_gen = d
        for k in range(n):
            bad = {key: c for key, c in d[k].items() if all(i >= n for i in key)}
            if bad:
                raise NotIntegrable(f"d w^{k + 1} has a (0,2) part {format_form(bad, n)}")
        for g in range(2 * n):
            dd = self.d(d[g])
            if dd:
                raise NotIntegrable(f"d(d {monomial_text((g,), n)}) = {format_form(dd, n)} is not zero")

    @classmethod
    def from_terms(cls, n: int, terms: Mapping, name: str = "") -> "StructureEquations":
        """Terms per generator ``"k"`` as ``[coefficient, "i", "j"]`` with ``"jb"`` for a bar."""
        images = {}
        for k, rows in terms.items():
            kk = parse_index(k, n)
            if kk >= n:
                raise ValidationError("give equations for w^k only; conjugates are induced")
            img = {}
            for coeff, a, b in rows:
                pair = (parse_index(a, n), parse_index(b, n))
                img[pair] = GaussQ.coerce(coeff) + img.get(pair, ZERO)
            images[kk] = img
        return cls(n, images, name)

    def _apply(self, form: Form, gen_images: Mapping[int, Form]) -> Form:
        """Graded Leibniz extension of a degree-one derivation given on generators."""
        out: Form = {}
        for key, c in form.items():
            for pos, g in enumerate(key):
                img = gen_images[g]
                if not img:
                    continue
                sign = -1 if pos % 2 else 1
                left, right = {key[:pos]: ONE}, {key[pos + 1:]: ONE}
                for k2, c2 in wedge(wedge(left, img), right).items():
                    _add_into(out, k2, c * c2 * sign)
        return out

    def _part(self, form: Form, p: int, q: int) -> Form:
        n = self.n
        return {k: c for k, c in form.items() if sum(1 for i in k if i < n) == p and len(k) - p == q}

    def d(self, form: Form) -> Form:
        return self._apply(form, self.d_gen)

    def partial(self, form: Form) -> Form:
        n = self.n
        imgs = {g: self._part(self.d_gen[g], 2, 0) if g < n else self._part(self.d_gen[g], 1, 1)
                for g in range(2 * n)}
        return self._apply(form, imgs)

    def partial_bar(self, form: Form) -> Form:
        n = self.n
        imgs = {g: self._part(self.d_gen[g], 1, 1) if g < n else self._part(self.d_gen[g], 0, 2)
                for g in range(2 * n)}
        return self._apply(form, imgs)

    def to_json(self) -> dict:
        return {"n": self.n, "name": self.name,
                "d": {str(k + 1): format_form(self.d_gen[k], self.n) for k in range(self.n)}}


def bidegree_basis(n: int, p: int, q: int) -> List[Index]:
    return [tuple(I) + tuple(i + n for i in J) for I in combinations(range(n), p) for J in combinations(range(n), q)]


@dataclass
class Bicomplex:
    se: StructureEquations
    bases: Dict[Tuple[int, int], List[Index]] = field(default_factory=dict)
    del_: Dict[Tuple[int, int], List[list]] = field(default_factory=dict)
    delbar: Dict[Tuple[int, int], List[list]] = field(default_factory=dict)

    def vector(self, form: Mapping[Index, GaussQ], p: int, q: int) -> list:
        basis = self.bases[(p, q)]
        pos = {k: i for i, k in enumerate(basis)}
        v = [ZERO] * len(basis)
        for k, c in form.items():
            if k not in pos:
                raise ValidationError(f"{monomial_text(k, self.se.n)} is not of bidegree ({p},{q})")
            v[pos[k]] = c
        return v

    def form(self, v: Sequence[GaussQ], p: int, q: int) -> Form:
        return {k: c for k, c in zip(self.bases[(p, q)], v) if c}

    def ddbar(self, p: int, q: int) -> List[list]:
        """Matrix of ``del delbar`` from ``(p, q)`` to ``(p+1, q+1)``."""
        return linalg.matmul(self.del_[(p, q + 1)], self.delbar[(p, q)], ZERO)


def _matrix(op, source: List[Index], target: List[Index]) -> List[list]:
    pos = {k: i for i, k in enumerate(target)}
    cols = []
    for key in source:
        col = [ZERO] * len(target)
        for k, c in op({key: ONE}).items():
            col[pos[k]] = c
        cols.append(col)
    return [[cols[j][i] for j in range(len(source))] for i in range(len(target))]


def _is_zero(m: List[list]) -> bool:
    return all(not x for row in m for x in row)


def build_bicomplex(se: StructureEquations) -> Bicomplex:
    n = se.n
    bc = Bicomplex(se)
    for p in range(n + 1):
        for q in range(n + 1):
            bc.bases[(p, q)] = bidegree_basis(n, p, q)
    for p in range(n + 1):
        for q in range(n + 1):
            src = bc.bases[(p, q)]
            bc.del_[(p, q)] = _matrix(se.partial, src, bc.bases.get((p + 1, q), []))
            bc.delbar[(p, q)] = _matrix(se.partial_bar, src, bc.bases.get((p, q + 1), []))
    for p in range(n + 1):
        for q in range(n + 1):
            if p + 2 <= n and not _is_zero(linalg.matmul(bc.del_[(p + 1, q)], bc.del_[(p, q)], ZERO)):
                raise NotIntegrable(f"del^2 != 0 on ({p},{q})")
            if q + 2 <= n and not _is_zero(linalg.matmul(bc.delbar[(p, q + 1)], bc.delbar[(p, q)], ZERO)):
                raise NotIntegrable(f"delbar^2 != 0 on ({p},{q})")
            if p + 1 <= n and q + 1 <= n:
                a = linalg.matmul(bc.del_[(p, q + 1)], bc.delbar[(p, q)], ZERO)
                b = linalg.matmul(bc.delbar[(p + 1, q)], bc.del_[(p, q)], ZERO)
                if not _is_zero([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]):
                    raise NotIntegrable(f"del delbar + delbar del != 0 on ({p},{q})")
    return bc


def _as_bicomplex(obj) -> Bicomplex:
    return obj if isinstance(obj, Bicomplex) else build_bicomplex(obj)


def bc_dimension(se, p: int, q: int) -> int:
    bc = _as_bicomplex(se)
    n = bc.se.n
    if not (0 <= p <= n and 0 <= q <= n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={n}")
    dim = len(bc.bases[(p, q)])
    stacked = bc.del_[(p, q)] + bc.delbar[(p, q)]
    kernel = dim - linalg.rank(stacked, ZERO)
    image = linalg.rank(bc.ddbar(p - 1, q - 1), ZERO) if p >= 1 and q >= 1 else 0
    return kernel - image


def bc_table(se) -> Dict[Tuple[int, int], int]:
    bc = _as_bicomplex(se)
    n = bc.se.n
    return {(p, q): bc_dimension(bc, p, q) for p in range(n + 1) for q in range(n + 1)}


def format_table(table: Mapping[Tuple[int, int], int], n: int) -> str:
    rows = ["p\\q " + " ".join(f"{q:>3}" for q in range(n + 1))]
    for p in range(n + 1):
        rows.append(f"{p:>3} " + " ".join(f"{table[(p, q)]:>3}" for q in range(n + 1)))
    return "\n".join(rows)


@dataclass
class ExactnessResult:
    exact: bool
    primitive: Optional[Form]
    rank: int
    augmented_rank: int
    n: int

    def __str__(self):
        if self.exact:
            return f"ddbar-exact, primitive {format_form(self.primitive, self.n)}"
        return f"not ddbar-exact: rank {self.rank} < augmented rank {self.augmented_rank}"


def is_bc_exact(se, form: Union[InvariantForm, Mapping[Index, GaussQ]]) -> ExactnessResult:
    """Solve ``del delbar x = form``; the primitive is checked before returning."""
    bc = _as_bicomplex(se)
    n = bc.se.n
    coeffs = dict(form.coeffs if isinstance(form, InvariantForm) else form)
    coeffs = {k: GaussQ.coerce(c) for k, c in coeffs.items() if c}
    if not coeffs:
        return ExactnessResult(True, {}, 0, 0, n)
    p, q = InvariantForm(n, coeffs).bidegree()
    if bc.se.partial(coeffs) or bc.se.partial_bar(coeffs):
        raise NotAClass(f"{format_form(coeffs, n)} is not del- and delbar-closed")
    if p == 0 or q == 0:
        return ExactnessResult(False, None, 0, 1, n)
    M = bc.ddbar(p - 1, q - 1)
    rhs = bc.vector(coeffs, p, q)
    r = linalg.rank(M, ZERO)
    x = linalg.solve(M, rhs, ZERO)
    if x is None:
        return ExactnessResult(False, None, r, r + 1, n)
    prim = bc.form(x, p - 1, q - 1)
    if bc.se.partial(bc.se.partial_bar(prim)) != coeffs:
        raise AssertionError("primitive does not reproduce the form")
    return ExactnessResult(True, prim, r, r, n)


# ---------------------------------------------------------------------------
# presets


def torus(n: int) -> StructureEquations:
    return StructureEquations(n, {}, name=f"torus-{n}")


def iwasawa() -> StructureEquations:
    """``d w^1 = d w^2 = 0``, ``d w^3 = -w^1 ^ w^2``."""
    return StructureEquations.from_terms(3, {"3": [[-1, "1", "2"]]}, name="iwasawa")


NILMANIFOLDS = {"iwasawa": iwasawa, "torus-1": lambda: torus(1), "torus-2": lambda: torus(2),
                "torus-3": lambda: torus(3)}


def nilmanifold(name: str) -> StructureEquations:
    try:
        return NILMANIFOLDS[name]()
    except KeyError:
        raise KeyError(f"unknown nilmanifold {name!r}; choose from {sorted(NILMANIFOLDS)}") from None


def iwasawa_curve_embedding(certified_zero: bool = False):
    """A curve ``C`` in the Iwasawa manifold with trivial normal bundle.

    Tangent bundles are holomorphically trivial, so ``c(X) = c(Y) = 1``. ``H(Y)``
    keeps only ``[C]`` and the point class; ``[C]`` is set to zero once certified.
    """
    from .blowup import EmbeddingData
    from .gring import RingPresentation, module_map, ring_hom
    from .symchern import FormalBundle
    ringY = RingPresentation([("C", 2), ("P", 3)], ["C"] if certified_zero else [], 3)
    ringX = RingPresentation([("pt", 1)], [], 1)
    pull = ring_hom(ringY, ringX, {"C": 0, "P": 0})
    push = module_map(ringX, ringY, {"1": ringY.parse("C"), "pt": ringY.gen("P")}, 2)
    N = FormalBundle.trivial(ringX, 2)
    name = "iwasawa-curve" + (" ([C]=0)" if certified_zero else "")
    return EmbeddingData(ringY, ringX, 2, pull, push, N, ringY.one(), ringX.one(), name)


def iwasawa_blowup_check():
    """Blow up a curve in the Iwasawa manifold and confirm the three Chern classes."""
    from .blowup import BlowupRing, Report, blowup_total_chern
    report = Report("iwasawa blow-up")
    se = iwasawa()
    bc = build_bicomplex(se)
    target = monomial(3, (1, 2), (1, 2))
    prim = monomial(3, (3,), (3,), -1)
    ddbar = se.partial(se.partial_bar(dict(prim.coeffs)))
    report.add("ddbar(-w^{3|3}) = w^{12|12}", ddbar == dict(target.coeffs), format_form(ddbar, 3))
    res = is_bc_exact(bc, target)
    report.add("is_bc_exact(w^{12|12})", res.exact, str(res))
    report.classes["primitive"] = format_form(res.primitive or {}, 3)

    raw = iwasawa_curve_embedding(False)
    ring = BlowupRing(raw)
    total = blowup_total_chern(raw, ring)
    E = ring.E()
    report.add("c1 = -[E]", total.component(1) == -E)
    report.add("c2 = pi*[C]", total.component(2) == ring.pi_star(raw.ringY.gen("C")))
    report.add("c3 = 0 before [C] vanishes", total.component(3).is_zero())

    # [C] lies in the span of w^{12|12}, which is ddbar-exact
    embed = iwasawa_curve_embedding(res.exact)
    ring = BlowupRing(embed)
    total = blowup_total_chern(embed, ring)
    E = ring.E()
    report.add("iwasawa:c1 = -[E]", total.component(1) == -E)
    report.add("iwasawa:c2 = 0", total.component(2).is_zero())
    report.add("iwasawa:c3 = 0", total.component(3).is_zero())
    for k in range(4):
        report.classes[f"c_{k}"] = str(total.component(k))
    table = bc_table(bc)
    report.add("h^{p,q} = h^{q,p}", all(table[(p, q)] == table[(q, p)] for p, q in table))
    report.add("h^{3,3} >= 1", table[(3, 3)] >= 1)
    report.classes["bc_table"] = {f"{p},{q}": v for (p, q), v in sorted(table.items())}
    return report
