"""Cohomology of a blow-up along a center of codimension ``r >= 2``.

Notation: ``i: X -> Y`` the center, ``pi: Yt -> Y`` the blow-up, ``j: E -> Yt``
the exceptional divisor, ``rho: E -> X`` the projective bundle and
``zeta = c_1(O_E(1))``.

* :class:`ExceptionalRing` is ``H(X)[zeta]`` modulo the Grothendieck relation
  ``sum_i zeta^{r-i} c_i(N) = 0``, stored on the free basis ``1..zeta^{r-1}``.
* :class:`BlowupRing` stores a class as ``pi^* y + sum_{i<=r-2} j_*(zeta^i rho^* e_i)``
  (the blow-up isomorphism). Products use the projection formula and
  ``j^* j_* = -zeta`` (``N_{E/Yt} = O_E(-1)``); a top slot ``zeta^{r-1}`` is
  removed with the formule-clef ``j_*(rho^* a c_{r-1}(Q_E)) = pi^* i_* a``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import List, Optional, Sequence, Tuple

from .errors import FormulaViolation, InconsistencyReport, RingMismatch, ValidationError
from .gring import GradedClass, LinearRingMap, RingPresentation, is_complete, projection_formula_check
from .rrwd import compute_f, f_specialize
from .symchern import (FormalBundle, TotalClass, chern_character, chern_of_tensor, elementary_from_newton,
                       newton_from_elementary)

log = logging.getLogger(__name__)


@dataclass
class EmbeddingData:
    ringY: RingPresentation
    ringX: RingPresentation
    r: int
    pull: LinearRingMap
    push: LinearRingMap
    N: FormalBundle
    tangentY: Optional[GradedClass] = None
    tangentX: Optional[GradedClass] = None
    name: str = ""
    extras: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.r < 2:
            raise ValidationError("the center must have codimension r >= 2")
        if self.pull.kind != "ring-homomorphism" or self.pull.source is not self.ringY \
                or self.pull.target is not self.ringX:
            raise ValidationError("pull must be a ring homomorphism H(Y) -> H(X)")
        if self.push.kind != "module-map" or self.push.source is not self.ringX \
                or self.push.target is not self.ringY:
            raise ValidationError("push must be a module map H(X) -> H(Y)")
        if self.push.degree_shift != self.r:
            raise ValidationError(f"push must raise degree by r={self.r}, not {self.push.degree_shift}")
        if not is_complete(self.push):
            raise ValidationError("push is not defined on every basis monomial of H(X)")
        if self.ringX.dim != self.ringY.dim - self.r:
            raise ValidationError("dim X must equal dim Y - r")
        if self.N.ring is not self.ringX or self.N.rank != self.r:
            raise ValidationError("N must be a rank r bundle on X")
        for label, t in (("tangentY", self.tangentY), ("tangentX", self.tangentX)):
            if t is not None:
                TotalClass(t)
        report = projection_formula_check(self.pull, self.push)
        if not report.passed:
            raise ValidationError(f"embedding {self.name!r}: {report}")
        top = self.N.c(self.r)
        for m in self.ringX.basis():
            a = self.ringX.monomial(m)
            if self.pull(self.push(a)) != a * top:
                raise ValidationError(f"embedding {self.name!r}: i^* i_* {a} != {a} * c_r(N)")

    @property
    def n(self) -> int:
        return self.ringY.dim


# ---------------------------------------------------------------------------
# free polynomials in zeta over H(X)


class FreeZeta:
    """Polynomial in ``zeta`` with coefficients in ``H(X)``, before any relation."""

    __slots__ = ("base", "coeffs")

    def __init__(self, base: RingPresentation, coeffs: Sequence[GradedClass]):
        coeffs = list(coeffs)
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        self.base = base
        self.coeffs: Tuple[GradedClass, ...] = tuple(coeffs)

    @classmethod
    def constant(cls, a: GradedClass) -> "FreeZeta":
        return cls(a.ring, [a])

    @classmethod
    def zeta_power(cls, base: RingPresentation, k: int, coeff=1) -> "FreeZeta":
        return cls(base, [base.zero()] * k + [base.scalar(coeff)])

    def coeff(self, k: int) -> GradedClass:
        return self.coeffs[k] if k < len(self.coeffs) else self.base.zero()

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "FreeZeta") -> "FreeZeta":
        n = max(len(self.coeffs), len(other.coeffs))
        return FreeZeta(self.base, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __neg__(self):
        return FreeZeta(self.base, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FreeZeta(self.base, [c * other for c in self.coeffs])
        if isinstance(other, GradedClass):
            return FreeZeta(self.base, [c * other for c in self.coeffs])
        out = [self.base.zero()] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        for a, x in enumerate(self.coeffs):
            for b, y in enumerate(other.coeffs):
                out[a + b] = out[a + b] + x * y
        return FreeZeta(self.base, out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, FreeZeta) and self.coeffs == other.coeffs

    def divide_by_zeta(self) -> "FreeZeta":
        if self.coeff(0):
            raise FormulaViolation(f"constant term {self.coeff(0)} does not vanish; cannot divide by zeta")
        return FreeZeta(self.base, self.coeffs[1:])

    def __str__(self):
        return _zeta_text(self.coeffs)


def _zeta_text(coeffs: Sequence[GradedClass], rho: bool = False) -> str:
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        inner = f"rho*({c})" if rho else f"({c})"
        if k == 0:
            parts.append(inner)
        elif k == 1:
            parts.append(f"zeta*{inner}")
        else:
            parts.append(f"zeta^{k}*{inner}")
    return " + ".join(parts) if parts else "0"


def one_plus_zeta_power(base: RingPresentation, k: int) -> FreeZeta:
    return FreeZeta(base, [base.scalar(comb(k, i)) for i in range(k + 1)])


# ---------------------------------------------------------------------------
# the exceptional divisor


class ExceptionalRing:
    def __init__(self, embed: EmbeddingData):
        self.embed = embed
        self.base = embed.ringX
        self.r = embed.r
        self.dim = embed.ringY.dim - 1
        self.N = embed.N
        # zeta^r = -sum_{i=1}^r zeta^{r-i} c_i(N)
        self._relation = [-self.N.c(self.r - k) for k in range(self.r)]

    def __repr__(self):
        return f"ExceptionalRing(r={self.r}, dim={self.dim})"

    def reduce(self, coeffs: Sequence[GradedClass]) -> "ExceptionalClass":
        work = list(coeffs) + [self.base.zero()] * max(self.r - len(coeffs), 0)
        for top in range(len(work) - 1, self.r - 1, -1):
            c = work[top]
            if c:
                for k in range(self.r):
                    work[top - self.r + k] = work[top - self.r + k] + c * self._relation[k]
        return ExceptionalClass(self, work[:self.r])

    def from_free(self, f: FreeZeta) -> "ExceptionalClass":
        return self.reduce(f.coeffs)

    def element(self, coeffs: Sequence) -> "ExceptionalClass":
        return self.reduce([c if isinstance(c, GradedClass) else self.base.element(c) for c in coeffs])

    def one(self) -> "ExceptionalClass":
        return self.rho_pull(self.base.one())

    def zero(self) -> "ExceptionalClass":
        return ExceptionalClass(self, [self.base.zero()] * self.r)

    def scalar(self, c) -> "ExceptionalClass":
        return self.rho_pull(self.base.scalar(c))

    def zeta(self) -> "ExceptionalClass":
        return self.reduce([self.base.zero(), self.base.one()])

    def zeta_power(self, k: int) -> "ExceptionalClass":
        return self.reduce([self.base.zero()] * k + [self.base.one()])

    def rho_pull(self, a: GradedClass) -> "ExceptionalClass":
        if a.ring is not self.base:
            raise RingMismatch("rho^* expects a class on X")
        return ExceptionalClass(self, [a] + [self.base.zero()] * (self.r - 1))

    def rho_push(self, e: "ExceptionalClass") -> GradedClass:
        """``rho_*(sum zeta^k rho^* a_k) = a_{r-1}``."""
        return e.coeffs[self.r - 1]

    def q_chern(self, k: int) -> "ExceptionalClass":
        """``c_k(Q_E) = sum_{i=0}^{k} zeta^i c_{k-i}(N)`` from ``c(rho^*N) = (1 - zeta) c(Q_E)``."""
        return self.reduce([self.N.c(k - i) for i in range(k + 1)])

    def q_bundle(self) -> FormalBundle:
        return FormalBundle(self, self.r - 1, [self.q_chern(k) for k in range(1, self.r)])

    def tautological(self, sign: int = -1) -> FormalBundle:
        """``O_E(-1)`` for ``sign=-1`` and ``O_E(1)`` for ``sign=1``."""
        return FormalBundle.line(self, self.zeta() * sign)

    def pulled_N(self) -> FormalBundle:
        return FormalBundle(self, self.r, [self.rho_pull(self.N.c(k)) for k in range(1, self.r + 1)])

    def basis(self) -> List["ExceptionalClass"]:
        out = []
        for k in range(self.r):
            for m in self.base.basis():
                out.append(self.rho_pull(self.base.monomial(m)) * self.zeta_power(k))
        return out


class ExceptionalClass:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: ExceptionalRing, coeffs: Sequence[GradedClass]):
        self.ring = ring
        self.coeffs: Tuple[GradedClass, ...] = tuple(coeffs)

    def _coerce(self, other):
        if isinstance(other, ExceptionalClass):
            if other.ring is not self.ring:
                raise RingMismatch("classes live on different exceptional divisors")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ExceptionalClass(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExceptionalClass(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ExceptionalClass(self.ring, [a * other for a in self.coeffs])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        base = self.ring.base
        prod = [base.zero()] * (2 * self.ring.r - 1)
        for a, x in enumerate(self.coeffs):
            if not x:
                continue
            for b, y in enumerate(other.coeffs):
                if y:
                    prod[a + b] = prod[a + b] + x * y
        return self.ring.reduce(prod)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        return isinstance(other, ExceptionalClass) and self.ring is other.ring and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def is_zero(self) -> bool:
        return not self

    def component(self, k: int) -> "ExceptionalClass":
        base = self.ring.base
        return ExceptionalClass(self.ring, [c.component(k - i) if k - i >= 0 else base.zero()
                                            for i, c in enumerate(self.coeffs)])

    def is_homogeneous(self, k: int) -> bool:
        return all(c.is_homogeneous(k - i) for i, c in enumerate(self.coeffs) if c)

    def __str__(self):
        return _zeta_text(self.coeffs)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# the blow-up


class BlowupRing:
    def __init__(self, embed: EmbeddingData):
        self.embed = embed
        self.exc = ExceptionalRing(embed)
        self.ringY = embed.ringY
        self.ringX = embed.ringX
        self.r = embed.r
        self.dim = embed.ringY.dim

    def __repr__(self):
        return f"BlowupRing(n={self.dim}, r={self.r})"

    def element(self, y, slots: Sequence = ()) -> "BlowupClass":
        y = y if isinstance(y, GradedClass) else self.ringY.element(y)
        slots = [s if isinstance(s, GradedClass) else self.ringX.element(s) for s in slots]
        slots += [self.ringX.zero()] * (self.r - 1 - len(slots))
        return BlowupClass(self, y, slots)

    def one(self) -> "BlowupClass":
        return self.pi_star(self.ringY.one())

    def zero(self) -> "BlowupClass":
        return self.pi_star(self.ringY.zero())

    def scalar(self, c) -> "BlowupClass":
        return self.pi_star(self.ringY.scalar(c))

    def pi_star(self, a: GradedClass) -> "BlowupClass":
        if a.ring is not self.ringY:
            raise RingMismatch("pi^* expects a class on Y")
        return BlowupClass(self, a, [self.ringX.zero()] * (self.r - 1))

    def j_push(self, e: ExceptionalClass) -> "BlowupClass":
        """``j_*``; the ``zeta^{r-1}`` coefficient goes through the formule-clef."""
        if e.ring is not self.exc:
            raise RingMismatch("j_* expects a class on this exceptional divisor")
        slots = list(e.coeffs[:self.r - 1])
        top = e.coeffs[self.r - 1]
        y = self.ringY.zero()
        if top:
            y = self.embed.push(top)
            N = self.embed.N
            for i in range(self.r - 1):
                slots[i] = slots[i] - top * N.c(self.r - 1 - i)
        return BlowupClass(self, y, slots)

    def j_pull(self, b: "BlowupClass") -> ExceptionalClass:
        """``j^*(pi^* y + j_* u) = rho^* i^* y - zeta u``."""
        exc = self.exc
        return exc.rho_pull(self.embed.pull(b.y)) - exc.zeta() * b.exceptional_part()

    def E(self) -> "BlowupClass":
        """The divisor class ``[E] = j_* 1``."""
        return self.j_push(self.exc.one())

    def psi(self, y: GradedClass, slots: Sequence[GradedClass]) -> "BlowupClass":
        """``pi^* y + sum_i j_*(zeta^i rho^* slots[i])`` computed through ``j_*``."""
        out = self.pi_star(y)
        for i, s in enumerate(slots):
            out = out + self.j_push(self.exc.rho_pull(s) * self.exc.zeta_power(i))
        return out


class BlowupClass:
    __slots__ = ("ring", "y", "slots")

    def __init__(self, ring: BlowupRing, y: GradedClass, slots: Sequence[GradedClass]):
        if len(slots) != ring.r - 1:
            raise ValueError(f"need {ring.r - 1} exceptional slots")
        self.ring = ring
        self.y = y
        self.slots: Tuple[GradedClass, ...] = tuple(slots)

    def exceptional_part(self) -> ExceptionalClass:
        """``u`` with ``self = pi^* y + j_* u``."""
        return ExceptionalClass(self.ring.exc, list(self.slots) + [self.ring.ringX.zero()])

    def _coerce(self, other):
        if isinstance(other, BlowupClass):
            if other.ring is not self.ring:
                raise RingMismatch("classes live on different blow-ups")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.scalar(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return BlowupClass(self.ring, self.y + other.y, [a + b for a, b in zip(self.slots, other.slots)])

    __radd__ = __add__

    def __neg__(self):
        return BlowupClass(self.ring, -self.y, [-a for a in self.slots])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return BlowupClass(self.ring, self.y * other, [a * other for a in self.slots])
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ring = self.ring
        exc = ring.exc
        pull = ring.embed.pull
        u, v = self.exceptional_part(), other.exceptional_part()
        w = exc.rho_pull(pull(self.y)) * v + exc.rho_pull(pull(other.y)) * u - exc.zeta() * u * v
        return ring.pi_star(self.y * other.y) + ring.j_push(w)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.ring.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.scalar(other)
        return (isinstance(other, BlowupClass) and other.ring is self.ring
                and self.y == other.y and self.slots == other.slots)

    def __hash__(self):
        return hash((self.y, self.slots))

    def __bool__(self):
        return bool(self.y) or any(self.slots)

    def is_zero(self) -> bool:
        return not self

    def component(self, k: int) -> "BlowupClass":
        zero = self.ring.ringX.zero()
        return BlowupClass(self.ring, self.y.component(k),
                           [s.component(k - i - 1) if k - i - 1 >= 0 else zero for i, s in enumerate(self.slots)])

    def is_homogeneous(self, k: int) -> bool:
        return (not self.y or self.y.is_homogeneous(k)) and \
            all(s.is_homogeneous(k - i - 1) for i, s in enumerate(self.slots) if s)

    def __str__(self):
        parts = []
        if self.y:
            parts.append(f"pi*({self.y})")
        for i, s in enumerate(self.slots):
            if s:
                z = "" if i == 0 else ("zeta*" if i == 1 else f"zeta^{i}*")
                parts.append(f"j_*({z}rho*({s}))")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def exceptional_ring(embed: EmbeddingData) -> ExceptionalRing:
    return ExceptionalRing(embed)


def blowup_ring(embed: EmbeddingData) -> BlowupRing:
    return BlowupRing(embed)


def pushforward_j(ring: BlowupRing, e: ExceptionalClass) -> BlowupClass:
    return ring.j_push(e)


# ---------------------------------------------------------------------------
# the blow-up formula


def alpha_division_form(N: FormalBundle) -> FreeZeta:
    """``(1/zeta) [sum_i c_{r-i}(N) - (1 - zeta) sum_i (1 + zeta)^i c_{r-i}(N)]`` in the free module."""
    base, r = N.ring, N.rank
    first = FreeZeta.constant(sum((N.c(r - i) for i in range(r + 1)), base.zero()))
    second = FreeZeta(base, [])
    for i in range(r + 1):
        second = second + one_plus_zeta_power(base, i) * N.c(r - i)
    one_minus_zeta = FreeZeta(base, [base.one(), -base.one()])
    return (first - one_minus_zeta * second).divide_by_zeta()


def alpha_binomial_form(N: FormalBundle) -> FreeZeta:
    """``sum_k c_{r-k}(N) [sum_{i=0}^k C(k,i) zeta^i - sum_{i=1}^k C(k,i) zeta^{i-1}]``."""
    base, r = N.ring, N.rank
    total = FreeZeta(base, [])
    for k in range(r + 1):
        coeffs = [Fraction(0)] * (k + 1)
        for i in range(k + 1):
            coeffs[i] += comb(k, i)
        for i in range(1, k + 1):
            coeffs[i - 1] -= comb(k, i)
        total = total + FreeZeta(base, [base.scalar(c) for c in coeffs]) * N.c(r - k)
    return total


def _tangent_data(embed: EmbeddingData) -> EmbeddingData:
    if embed.tangentY is not None and embed.tangentX is not None:
        return embed
    from .presets import universal_embedding
    log.warning("tangent classes missing; computing in the universal embedding (n=%d, r=%d)", embed.n, embed.r)
    return universal_embedding(embed.n, embed.r)


def blowup_total_chern(embed: EmbeddingData, ring: Optional[BlowupRing] = None) -> BlowupClass:
    """``c(Yt) = pi^* c(Y) + j_*(rho^* c(X) * alpha)``."""
    embed = _tangent_data(embed)
    ring = ring if ring is not None and ring.embed is embed else BlowupRing(embed)
    exc = ring.exc
    alpha = exc.from_free(alpha_division_form(embed.N))
    return ring.pi_star(embed.tangentY) + ring.j_push(exc.rho_pull(embed.tangentX) * alpha)


# ---------------------------------------------------------------------------
# verification reports


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"label": self.label, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    title: str
    checks: List[Check] = field(default_factory=list)
    classes: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, label: str, passed: bool, detail: str = "") -> Check:
        check = Check(label, bool(passed), detail)
        self.checks.append(check)
        return check

    def get(self, label: str) -> Check:
        return next(c for c in self.checks if c.label == label)

    def __str__(self):
        lines = [f"{self.title}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{'pass' if c.passed else 'FAIL'}] {c.label}" + (f"  {c.detail}" if c.detail else ""))
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"title": self.title, "passed": self.passed, "checks": [c.to_json() for c in self.checks],
                "classes": self.classes}


def _exp_series(exc: ExceptionalRing, sign: int) -> ExceptionalClass:
    out = exc.one()
    z = exc.zeta() * sign
    term = exc.one()
    for k in range(1, exc.dim + 1):
        term = term * z * Fraction(1, k)
        out = out + term
    return out


def _divided_exp_series(exc: ExceptionalRing, sign: int) -> ExceptionalClass:
    """``(e^{s zeta} - 1) / (s zeta) = sum_k (s zeta)^k / (k+1)!``."""
    out = exc.zero()
    z = exc.zeta() * sign
    term = exc.one()
    for k in range(0, exc.dim + 1):
        out = out + term * Fraction(1, factorial(k + 1))
        term = term * z
    return out


def _chern_character_from_total(total, rank: int, dim: int):
    ring = total.ring
    sigmas = [total.component(k) for k in range(1, dim + 1)]
    out = ring.one() * rank
    for m in range(1, dim + 1):
        out = out + newton_from_elementary(m, sigmas[:m])
    return out


def blowup_chern_character(embed: EmbeddingData, strict: bool = False) -> Report:
    """Compare ``pi^* ch(Y) - ch(Yt)`` (from the total class via Newton sums) with
    ``j_*[(1 - e^{-zeta})/zeta (rho^* ch N - e^{zeta})]``.

    The same comparison is made with ``zeta`` replaced by ``-zeta`` inside the
    bracket, which is what GRR gives for ``N_{E/Yt} = O_E(-1)``.
    """
    embed = _tangent_data(embed)
    ring = BlowupRing(embed)
    exc = ring.exc
    n = ring.dim
    total = blowup_total_chern(embed, ring)
    ch_Y = _chern_character_from_total(embed.tangentY, n, n)
    ch_Yt = _chern_character_from_total(total, n, n)
    lhs = ring.pi_star(ch_Y) - ch_Yt
    ch_N = exc.rho_pull(chern_character(embed.N))
    as_printed = ring.j_push(_divided_exp_series(exc, -1) * (ch_N - _exp_series(exc, 1)))
    consistent = ring.j_push(_divided_exp_series(exc, 1) * (ch_N - _exp_series(exc, -1)))
    report = Report(f"chern character ({embed.name or 'embedding'})")
    report.classes = {"lhs": str(lhs), "rhs_printed": str(as_printed), "rhs_consistent": str(consistent)}
    report.add("rem:ch-blowup", lhs == as_printed,
               "" if lhs == as_printed else f"difference {lhs - as_printed}")
    report.add("rem:ch-blowup[O_E(-1) normal]", lhs == consistent,
               "" if lhs == consistent else f"difference {lhs - consistent}")
    sums = [ch_Yt.component(k) for k in range(1, n + 1)]
    back = all(elementary_from_newton(m, sums[:m]) == total.component(m) for m in range(1, n + 1))
    report.add("sec5:Q_m-roundtrip", back)
    for k in range(1, n + 1):
        report.classes[f"ch_{k}_difference"] = str(lhs.component(k))
    if strict and not report.passed:
        raise InconsistencyReport(report)
    return report


def theorem_components(embed: EmbeddingData) -> Report:
    """Degree 1 and 2 of the blow-up formula against their closed forms."""
    embed = _tangent_data(embed)
    ring = BlowupRing(embed)
    exc = ring.exc
    r = embed.r
    total = blowup_total_chern(embed, ring)
    E = ring.E()
    report = Report(f"blow-up formula components ({embed.name or 'embedding'})")
    c1 = ring.pi_star(embed.tangentY.component(1)) + E * (1 - r)
    report.add("eq:bc1", total.component(1) == c1)
    zeta = exc.zeta()
    arg = zeta * Fraction(r * (3 - r), 2) + exc.rho_pull(embed.N.c(1)) * (2 - r) \
        + exc.rho_pull(embed.tangentX.component(1)) * (1 - r)
    c2 = ring.pi_star(embed.tangentY.component(2)) + ring.j_push(arg)
    report.add("eq:c2", total.component(2) == c2)
    alpha = exc.from_free(alpha_division_form(embed.N))
    bracket = exc.rho_pull(embed.tangentX) * alpha
    report.add("eq:c2[argument]", bracket.component(1) == arg)
    for k in range(ring.dim + 1):
        report.classes[f"c_{k}"] = str(total.component(k))
    return report


def eq_426_431_suite(embed: EmbeddingData) -> Report:
    embed = _tangent_data(embed)
    ring = BlowupRing(embed)
    exc = ring.exc
    r = embed.r
    total = blowup_total_chern(embed, ring)
    O_minus, O_plus = exc.tautological(-1), exc.tautological(1)
    Q = exc.q_bundle()
    rhoN = exc.pulled_N()
    f = compute_f(1, r - 1, exc.dim)
    f_val = f_specialize(f, O_minus, Q)
    report = Report(f"eqs 426-431 ({embed.name or 'embedding'})")

    c_jQ = ring.one() + ring.j_push(f_val)
    report.add("(426)+(427)", ring.pi_star(embed.tangentY) == total * c_jQ)

    lhs428 = Q.total().value * _inverse(chern_of_tensor(O_plus, Q).total().value) - exc.one()
    report.add("(428)", lhs428 == O_minus.c(1) * f_val)

    pulled = ring.j_pull(total)
    rhs429 = chern_of_tensor(rhoN, O_plus).total().value * exc.rho_pull(embed.tangentX) * O_minus.total().value
    report.add("(429)", pulled == rhs429)

    report.add("(430)", rhoN.total().value == O_minus.total().value * Q.total().value)
    report.add("(431)", chern_of_tensor(rhoN, O_plus).total() == chern_of_tensor(Q, O_plus).total())

    alpha = exc.from_free(alpha_division_form(embed.N))
    # c(Yt) = pi^* c(Y) - j_*(j^* c(Yt) f), so both j_* arguments agree
    report.add("alpha", ring.j_push(-(pulled * f_val)) == ring.j_push(exc.rho_pull(embed.tangentX) * alpha))
    report.add("whitney:i*c(Y)=c(X)c(N)",
               embed.pull(embed.tangentY) == embed.tangentX * embed.N.total().value)
    report.classes["c(j_*Q_E)"] = str(c_jQ)
    return report


def _inverse(value):
    from .symchern import total_inv
    return total_inv(TotalClass(value)).value


def appendix_suite(embed: EmbeddingData) -> Report:
    ring = BlowupRing(embed)
    exc = ring.exc
    r = embed.r
    report = Report(f"appendix identities ({embed.name or 'embedding'})")
    minus_zeta = -exc.zeta()
    basis = exc.basis()
    bad = [str(w) for w in basis if ring.j_pull(ring.j_push(w)) != minus_zeta * w]
    report.add("prop:sel-int", not bad, "; ".join(bad[:3]))
    q_top = exc.q_chern(r - 1)
    bad = []
    for m in embed.ringX.basis():
        a = embed.ringX.monomial(m)
        if ring.j_push(exc.rho_pull(a) * q_top) != ring.pi_star(embed.push(a)):
            bad.append(str(a))
    report.add("prop:for-cl", not bad, "; ".join(bad[:3]))
    # blow-up isomorphism: the stored coordinates are exactly the Psi-coordinates
    bad = []
    for m in embed.ringX.basis():
        a = embed.ringX.monomial(m)
        for i in range(r - 1):
            slots = [embed.ringX.zero()] * (r - 1)
            slots[i] = a
            cls = ring.psi(embed.ringY.zero(), slots)
            if cls.slots != tuple(slots) or cls.y or not cls:
                bad.append(f"slot {i}: {a}")
    for m in embed.ringY.basis():
        y = embed.ringY.monomial(m)
        if not ring.pi_star(y) or ring.pi_star(y).y != y:
            bad.append(str(y))
    report.add("prop:b-l-f", not bad and not ring.zero(), "; ".join(bad[:3]))
    bad = []
    for m in embed.ringX.basis():
        a = embed.ringX.monomial(m)
        for k in range(r):
            got = exc.rho_push(exc.rho_pull(a) * exc.zeta_power(k))
            if got != (a if k == r - 1 else embed.ringX.zero()):
                bad.append(f"zeta^{k}*{a}")
    report.add("rho_*", not bad, "; ".join(bad[:3]))
    report.add("c1(O(E))=[E]: j^*[E] = -zeta", ring.j_pull(ring.E()) == minus_zeta)
    rel = FreeZeta(embed.ringX, [embed.N.c(r - i) for i in range(r + 1)])
    report.add("grothendieck-relation", not exc.from_free(rel))
    report.add("(430)-expansion", exc.pulled_N().total().value == (exc.one() - exc.zeta()) * exc.q_bundle().total().value)
    return report


def point_center_text(cls: BlowupClass) -> Optional[str]:
    """Render a class as ``pi*(...) + polynomial in E`` when the center is a point.

    Uses ``j_*(zeta^i) = (-1)^i E^{i+1}`` and ``i_* 1 = j_*(zeta^{r-1}) = (-1)^{r-1} E^r``.
    Returns None for positive-dimensional centers.
    """
    ring = cls.ring
    embed = ring.embed
    if embed.ringX.dim != 0:
        return None
    point = embed.push(embed.ringX.one())
    e_coeffs = {i + 1: s.constant() * (-1) ** i for i, s in enumerate(cls.slots) if s}
    y = cls.y
    lead = point.terms
    if len(lead) == 1:
        (m, c), = lead.items()
        k = y.coefficient(m) / c
        if k:
            y = y - point * k
            e_coeffs[ring.r] = e_coeffs.get(ring.r, 0) + k * (-1) ** (ring.r - 1)
    parts = [f"pi*({y})"] if y else []
    for power in sorted(e_coeffs):
        c = e_coeffs[power]
        if not c:
            continue
        mono = "E" if power == 1 else f"E^{power}"
        parts.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
    text = " + ".join(parts) if parts else "0"
    return text.replace("+ -", "- ")
