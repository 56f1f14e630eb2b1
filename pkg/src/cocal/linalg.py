"""Exact linear algebra over Q (Fractions) or a multi-quadratic field (Surds).

Matrices are lists of rows.  Nothing here rounds.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .surd import sign

Matrix = list[list]


def to_fraction_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[x if not isinstance(x, (int, float)) else Fraction(x) for x in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot columns."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows or not rows[0]:
        return 0
    # forward elimination only
    m = [list(r) for r in rows]
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for i in range(r + 1, n_rows):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def nullspace(rows: Sequence[Sequence], n_cols: int | None = None) -> Matrix:
    """Basis of {x : M x = 0}, one vector per free column."""
    if not rows:
        if n_cols is None:
            raise ValueError("need n_cols for an empty matrix")
        return [[Fraction(int(i == j)) for j in range(n_cols)] for i in range(n_cols)]
    n_cols = len(rows[0])
    m, pivots = rref(rows)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n_cols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -m[i][f]
        basis.append(v)
    return basis


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list | None:
    """One solution of M x = rhs (free variables set to zero), or None."""
    n_cols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = m[i][n_cols]
    return x


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*a)]


def inverse(rows: Sequence[Sequence]) -> Matrix:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in m]


def det(rows: Sequence[Sequence]):
    m = [list(r) for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        p = m[c][c]
        out = out * p
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def integer_scaled(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    """Multiply a rational matrix by the lcm of its denominators."""
    den = 1
    for row in rows:
        for x in row:
            den = lcm(den, Fraction(x).denominator)
    return [[int(Fraction(x) * den) for x in row] for row in rows]


def leading_minors_int(rows: Sequence[Sequence[int]]) -> list[int]:
    """Leading principal minors of an integer matrix by Bareiss elimination.

    Without row swaps the k-th Bareiss pivot equals the k-th leading minor;
    once a pivot vanishes the remaining minors are computed directly.
    """
    m = [list(r) for r in rows]
    n = len(m)
    minors: list[int] = []
    prev = 1
    for k in range(n):
        piv = m[k][k]
        minors.append(piv)
        if piv == 0:
            minors.extend(int(det([r[: j + 1] for r in rows[: j + 1]])) for j in range(k + 1, n))
            return minors
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * piv - m[i][k] * m[k][j]) // prev
        prev = piv
    return minors


def definiteness(sym: Sequence[Sequence]) -> int:
    """+1 if positive definite, -1 if negative definite, 0 otherwise (Sylvester)."""
    n = len(sym)
    if n == 0:
        return 1
    if all(isinstance(x, (int, Fraction)) for row in sym for x in row):
        minors = leading_minors_int(integer_scaled(sym))
        signs = [(x > 0) - (x < 0) for x in minors]
    else:
        signs = [sign(det([r[: k + 1] for r in sym[: k + 1]])) for k in range(n)]
    if all(s > 0 for s in signs):
        return 1
    if all(s == (-1) ** (k + 1) for k, s in enumerate(signs)):
        return -1
    return 0


def inertia(sym: Sequence[Sequence]) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric matrix, by congruence."""
    _, diag = congruence_diagonalize(sym)
    signs = [sign(x) for x in diag]
    return signs.count(1), signs.count(-1), signs.count(0)


def congruence_diagonalize(sym: Sequence[Sequence[Fraction]]) -> tuple[Matrix, list[Fraction]]:
    """Return P and D with P S P^T = diag(D), P invertible and rational."""
    n = len(sym)
    m = [list(r) for r in sym]
    p = identity(n)
    diag: list[Fraction] = []
    for k in range(n):
        if not m[k][k]:
            j = next((j for j in range(k + 1, n) if m[j][j]), None)
            if j is not None:
                m[k], m[j] = m[j], m[k]
                for row in m:
                    row[k], row[j] = row[j], row[k]
                p[k], p[j] = p[j], p[k]
            else:
                j = next((j for j in range(k + 1, n) if m[k][j]), None)
                if j is not None:
                    for c in range(n):
                        m[k][c] += m[j][c]
                    for r in range(n):
                        m[r][k] += m[r][j]
                    p[k] = [a + b for a, b in zip(p[k], p[j])]
        piv = m[k][k]
        diag.append(piv)
        if not piv:
            continue
        for i in range(k + 1, n):
            if m[i][k]:
                f = m[i][k] / piv
                for c in range(n):
                    m[i][c] -= f * m[k][c]
                for r in range(n):
                    m[r][i] -= f * m[r][k]
                p[i] = [a - f * b for a, b in zip(p[i], p[k])]
    return p, diag
