"""Small exact linear algebra over Q (Fraction) or F_p (int)."""

from __future__ import annotations

from fractions import Fraction

from .novikov import QQ, Field


def _copy(rows, field: Field):
    return [[field.coerce(x) for x in r] for r in rows]


def rref(rows, field: Field = QQ):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    M = _copy(rows, field)
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = field.inv(M[r][c])
        M[r] = [field.norm(x * inv) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [field.norm(a - f * b) for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M, pivots


def rank(rows, field: Field = QQ) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows, ncols: int, field: Field = QQ):
    """Basis of ``{x : rows @ x = 0}`` as a list of vectors."""
    if not rows:
        return [[field.coerce(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    M, piv = rref(rows, field)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [field.coerce(0)] * ncols
        v[f] = field.coerce(1)
        for i, pc in enumerate(piv):
            v[pc] = field.norm(-M[i][f])
        basis.append(v)
    return basis


def matmul(A, B, field: Field = QQ):
    if not A or not B:
        return [[field.coerce(0)] * (len(B[0]) if B else 0) for _ in A]
    return [[field.norm(sum((a * b for a, b in zip(row, col)), field.coerce(0))) for col in zip(*B)]
            for row in A]


def transpose(A):
    return [list(c) for c in zip(*A)]


def zeros(m: int, n: int, field: Field = QQ):
    z = field.coerce(0)
    return [[z] * n for _ in range(m)]


def identity(n: int, field: Field = QQ):
    return [[field.coerce(int(i == j)) for j in range(n)] for i in range(n)]


def as_fraction_matrix(rows):
    return [[Fraction(x) for x in r] for r in rows]
