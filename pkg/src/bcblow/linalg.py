"""Exact Gaussian elimination over any field whose elements support + - * / and ==.

Used with ``Fraction`` and with Gaussian rationals; nothing here rounds.
"""
from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


def row_echelon(rows: Sequence[Sequence], zero) -> Tuple[List[list], List[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != zero), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != zero:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence], zero) -> int:
    return len(row_echelon(rows, zero)[1])


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> List[list]:
    red, pivots = row_echelon(rows, zero)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = zero - row[f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence, zero) -> Optional[list]:
    """One solution of ``rows @ x == rhs`` (free variables set to zero), or None."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_echelon(aug, zero)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for row, p in zip(red, pivots):
        x[p] = row[ncols]
    return x


def matvec(rows: Sequence[Sequence], v: Sequence, zero) -> list:
    out = []
    for r in rows:
        acc = zero
        for a, b in zip(r, v):
            if a != zero and b != zero:
                acc = acc + a * b
        out.append(acc)
    return out


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> List[list]:
    if not a or not b:
        return [[zero] * (len(b[0]) if b else 0) for _ in a]
    cols = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col) if x != zero and y != zero), zero) for col in cols]
            for row in a]
