"""Exact linear algebra over the rationals, sized for the small dense
matrices that Hom-complex differentials produce.

Rank uses fraction-free (Bareiss) elimination on integer-scaled rows, so
no rational blow-up occurs; solving and kernel bases use plain Gaussian
elimination over ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Matrix = list[list[Fraction]]


def _integer_rows(rows: list[list[Fraction | int]]) -> list[list[int]]:
    out = []
    for row in rows:
        fracs = [Fraction(x) for x in row]
        scale = lcm(*(f.denominator for f in fracs)) if fracs else 1
        out.append([int(f * scale) for f in fracs])
    return out


def rank(rows: list[list[Fraction | int]]) -> int:
    """Rank by Bareiss elimination; exact for any rational input."""
    m = [r[:] for r in _integer_rows(rows) if any(r)]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = m[r][c]
        r += 1
        if r == len(m):
            break
    return r


def _rref(m: Matrix) -> tuple[Matrix, list[int]]:
    m = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def solve(rows: Matrix, rhs: list[Fraction | int]) -> list[Fraction] | None:
    """One solution of A x = b, or None when inconsistent.

    ``rows`` are the rows of A; free variables are set to 0.
    """
    if not rows:
        return None if any(rhs) else []
    ncols = len(rows[0])
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    red, pivots = _rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x


def kernel_basis(rows: Matrix, ncols: int) -> list[list[Fraction]]:
    """Basis of the null space of the matrix with the given rows."""
    red, pivots = _rref([list(map(Fraction, r)) for r in rows])
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for row, c in zip(red, pivots):
            vec[c] = -row[free]
        basis.append(vec)
    return basis
