"""Small exact integer matrix utilities: Smith normal form and unimodular inverse.

Matrices are lists of lists of Python ints.  Sizes here are tiny (ranks of
root lattices, generator counts of abelian groups), so the classical
elementary-operation SNF is plenty.
"""

from __future__ import annotations

from fractions import Fraction


def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        ai = a[i]
        for t in range(k):
            c = ai[t]
            if c == 0:
                continue
            bt = b[t]
            row = out[i]
            for j in range(m):
                row[j] += c * bt[j]
    return out


def mat_vec(a, v):
    return [sum(a[i][j] * v[j] for j in range(len(v))) for i in range(len(a))]


def smith_normal_form(mat):
    """Return (U, D, V) with U @ mat @ V = D diagonal, U and V unimodular."""
    a = [row[:] for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    u = identity_matrix(n)
    v = identity_matrix(m)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    while t < min(n, m):
        # locate a nonzero pivot in the remaining block
        pivot = None
        for i in range(t, n):
            for j in range(t, m):
                if a[i][j] != 0:
                    if pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]]):
                        pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            reduced = False
            for i in range(t + 1, n):
                if a[i][t]:
                    qc = a[i][t] // a[t][t]
                    add_row(t, i, -qc)
                    if a[i][t]:
                        swap_rows(t, i)
                    reduced = True
            for j in range(t + 1, m):
                if a[t][j]:
                    qc = a[t][j] // a[t][t]
                    add_col(t, j, -qc)
                    if a[t][j]:
                        swap_cols(t, j)
                    reduced = True
            if not reduced:
                break
        # enforce divisibility d_t | a[i][j] for the rest
        dirty = False
        for i in range(t + 1, n):
            for j in range(t + 1, m):
                if a[i][j] % a[t][t]:
                    add_row(i, t, 1)
                    dirty = True
                    break
            if dirty:
                break
        if dirty:
            continue
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, a, v


def unimodular_inverse(u):
    """Exact inverse of a unimodular integer matrix, returned over the ints."""
    n = len(u)
    aug = [[Fraction(u[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                c = aug[r][col]
                aug[r] = [x - c * y for x, y in zip(aug[r], aug[col])]
    out = [[aug[i][n + j] for j in range(n)] for i in range(n)]
    for row in out:
        for x in row:
            if x.denominator != 1:
                raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]
