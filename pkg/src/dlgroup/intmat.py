"""Small exact integer matrix helpers (matrices are tuples of row tuples)."""

from __future__ import annotations

from fractions import Fraction

from .errors import NotUnimodular


def identity_matrix(n: int) -> tuple:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a, b) -> tuple:
    n, m, k = len(a), len(b), len(b[0])
    return tuple(tuple(sum(a[i][s] * b[s][j] for s in range(m)) for j in range(k)) for i in range(n))


def matvec(a, v) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def matsub(a, b) -> tuple:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def column(a, j: int) -> tuple:
    return tuple(row[j] for row in a)


def det(a) -> int:
    """Determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def inverse_unimodular(a) -> tuple:
    """Exact inverse of an integer matrix with determinant +-1."""
    n = len(a)
    dt = det(a)
    if dt not in (1, -1):
        raise NotUnimodular(f"determinant {dt} is not +-1")
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if m[r][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    out = tuple(tuple(int(x) for x in row[n:]) for row in m)
    return out


def kernel_basis(a) -> list[tuple]:
    """A Z-basis of {x in Z^n : a x = 0}, via unimodular column reduction.

    Column operations U with a U in column echelon form; the columns of U
    matching zero columns of a U span the integer kernel.
    """
    rows = len(a)
    n = len(a[0]) if rows else 0
    m = [list(row) for row in a]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        for r in range(rows):
            m[r][dst] -= f * m[r][src]
        for r in range(n):
            u[r][dst] -= f * u[r][src]

    def swap(c1, c2):
        for r in range(rows):
            m[r][c1], m[r][c2] = m[r][c2], m[r][c1]
        for r in range(n):
            u[r][c1], u[r][c2] = u[r][c2], u[r][c1]

    pivot_col = 0
    for r in range(rows):
        if pivot_col >= n:
            break
        while True:
            nz = [c for c in range(pivot_col, n) if m[r][c] != 0]
            if not nz:
                break
            best = min(nz, key=lambda c: abs(m[r][c]))
            swap(pivot_col, best)
            done = True
            for c in range(pivot_col + 1, n):
                if m[r][c]:
                    col_op(c, pivot_col, m[r][c] // m[r][pivot_col])
                    if m[r][c]:
                        done = False
            if done:
                pivot_col += 1
                break
    return [tuple(u[r][c] for r in range(n)) for c in range(pivot_col, n)]
