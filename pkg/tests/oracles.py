"""Independent reference computations built on sympy and explicit numbers."""
from fractions import Fraction
from itertools import combinations, product
from math import factorial, prod

import sympy as sp


def _truncate(expr, t, top):
    poly = sp.Poly(sp.expand(expr), t)
    return sum((c * t ** k for (k,), c in poly.terms() if k <= top), sp.Integer(0))


def koszul_lhs_sympy(u, v, top):
    """prod_i c(wedge^i U^dual (x) V)^{(-1)^i} - 1 in roots, up to total degree ``top``."""
    t = sp.Symbol("t")
    xs = sp.symbols(f"x1:{u + 1}")
    ys = sp.symbols(f"y1:{v + 1}")
    acc = sp.Integer(1)
    for i in range(u + 1):
        for subset in combinations(xs, i):
            for y in ys:
                root = t * (y - sum(subset))
                if i % 2 == 0:
                    factor = 1 + root
                else:
                    factor = sum((-root) ** k for k in range(top + 1))
                acc = _truncate(acc * factor, t, top)
    return sp.expand((acc - 1).subs(t, 1)), xs, ys


def f_by_linear_solve(u, v, degree):
    """Solve e_u(x) * f(e(x); e(y)) = Koszul side for the coefficients of ``f``."""
    lhs, xs, ys = koszul_lhs_sympy(u, v, u + degree)
    weights = list(range(1, u + 1)) + list(range(1, v + 1))
    monos = [m for m in product(*(range(degree // w + 1) for w in weights))
             if sum(e * w for e, w in zip(m, weights)) <= degree]
    ex = [sp.Integer(1)] + [sum(prod(s) for s in combinations(xs, k)) for k in range(1, u + 1)]
    ey = [sp.Integer(1)] + [sum(prod(s) for s in combinations(ys, k)) for k in range(1, v + 1)]
    unknowns = sp.symbols(f"a0:{len(monos)}")
    guess = 0
    for a, m in zip(unknowns, monos):
        term = a
        for k, e in enumerate(m[:u], start=1):
            term *= ex[k] ** e
        for k, e in enumerate(m[u:], start=1):
            term *= ey[k] ** e
        guess += term
    residual = sp.Poly(sp.expand(ex[u] * guess - lhs), *xs, *ys)
    sol = sp.solve(residual.coeffs(), unknowns, dict=True)
    assert len(sol) == 1
    return {m: sol[0][a] for a, m in zip(unknowns, monos) if sol[0][a] != 0}


def elementary_numbers(roots, k):
    return sum(prod(s) for s in combinations(roots, k)) if k else 1


def power_sum_normalized(roots, m):
    """S_m = p_m / m!."""
    return Fraction(sum(r ** m for r in roots), factorial(m))


def alpha_sympy(r):
    """Coefficients of alpha in zeta over symbols c1..cr, by polynomial division."""
    z = sp.Symbol("z")
    c = [sp.Integer(1)] + list(sp.symbols(f"c1:{r + 1}"))
    numerator = sum(c[r - i] for i in range(r + 1)) - (1 - z) * sum((1 + z) ** i * c[r - i] for i in range(r + 1))
    quotient, remainder = sp.div(sp.expand(numerator), z, z)
    assert remainder == 0
    return sp.Poly(quotient, z), c
