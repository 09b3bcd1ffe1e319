"""Hot loops for the determinantal-divisor oracle.

``minor_valuations`` takes a polynomial matrix ``A[i, j, k]`` (coefficient of
``S^k`` in entry ``(i, j)``) and returns, for each size ``k``, the minimal
``S``-adic valuation over all ``k x k`` minors.  Minors are built by Laplace
expansion along the last row, memoised over (row mask, column mask).

Two interchangeable implementations exist: a numba kernel and a pure numpy
one.  Set ``ALMOSTNOV_NO_NUMBA=1`` to force the numpy path; it is also used
when numba is not importable.
"""

from __future__ import annotations

import math
import os

import numpy as np

NO_VALUATION = -1  # all minors of that size vanish

try:  # pragma: no cover - exercised implicitly
    if os.environ.get("ALMOSTNOV_NO_NUMBA", "") not in ("", "0"):
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _popcount(x: int) -> int:
    return bin(x).count("1")


def minor_valuations_numpy(A: np.ndarray, p: int) -> np.ndarray:
    m, n, D = A.shape
    kmax = min(m, n)
    L = kmax * (D - 1) + 1
    det = {}
    out = np.full(kmax + 1, NO_VALUATION, dtype=np.int64)
    out[0] = 0
    rows_by_size = [[r for r in range(1 << m) if _popcount(r) == k] for k in range(kmax + 1)]
    cols_by_size = [[c for c in range(1 << n) if _popcount(c) == k] for k in range(kmax + 1)]
    empty = np.zeros(L, dtype=A.dtype)
    empty[0] = 1
    det[(0, 0)] = empty
    for k in range(1, kmax + 1):
        best = NO_VALUATION
        for R in rows_by_size[k]:
            last = R.bit_length() - 1
            Rm = R & ~(1 << last)
            for C in cols_by_size[k]:
                acc = np.zeros(L, dtype=A.dtype)
                pos = 0
                for j in range(n):
                    if not (C >> j) & 1:
                        continue
                    sub = det[(Rm, C & ~(1 << j))]
                    if sub.any() and A[last, j].any():
                        prod = np.convolve(A[last, j], sub)[:L]
                        if (k - 1 + pos) % 2:
                            acc[:prod.size] -= prod
                        else:
                            acc[:prod.size] += prod
                        if p:
                            acc %= p
                    pos += 1
                det[(R, C)] = acc
                nz = [t for t in range(L) if acc[t] != 0]
                if nz and (best == NO_VALUATION or nz[0] < best):
                    best = nz[0]
        out[k] = best
    return out


if HAVE_NUMBA:

    @njit(cache=True)
    def _minor_valuations_jit(A, p):  # pragma: no cover - compiled
        m, n, D = A.shape
        kmax = min(m, n)
        L = kmax * (D - 1) + 1
        det = np.zeros((1 << m, 1 << n, L), dtype=np.int64)
        det[0, 0, 0] = 1
        pc_r = np.zeros(1 << m, dtype=np.int64)
        for r in range(1 << m):
            pc_r[r] = pc_r[r >> 1] + (r & 1)
        pc_c = np.zeros(1 << n, dtype=np.int64)
        for c in range(1 << n):
            pc_c[c] = pc_c[c >> 1] + (c & 1)
        out = np.full(kmax + 1, -1, dtype=np.int64)
        out[0] = 0
        for k in range(1, kmax + 1):
            best = -1
            for R in range(1 << m):
                if pc_r[R] != k:
                    continue
                last = 0
                for i in range(m):
                    if (R >> i) & 1:
                        last = i
                Rm = R & ~(1 << last)
                for C in range(1 << n):
                    if pc_c[C] != k:
                        continue
                    pos = 0
                    for j in range(n):
                        if not (C >> j) & 1:
                            continue
                        sub = C & ~(1 << j)
                        sign = 1 if (k - 1 + pos) % 2 == 0 else -1
                        for a in range(D):
                            x = A[last, j, a]
                            if x == 0:
                                continue
                            for b in range(L - a):
                                y = det[Rm, sub, b]
                                if y != 0:
                                    det[R, C, a + b] += sign * x * y
                        if p != 0:
                            for t in range(L):
                                det[R, C, t] %= p
                        pos += 1
                    for t in range(L):
                        if det[R, C, t] != 0:
                            if best == -1 or t < best:
                                best = t
                            break
            out[k] = best
        return out


def minor_valuations(A: np.ndarray, p: int = 0) -> np.ndarray:
    """Minimal valuation of ``k x k`` minors for ``k = 0..min(m, n)``.

    ``p == 0`` computes over the integers, switching to Python integers when
    an int64 overflow is possible; otherwise arithmetic is modulo the prime
    ``p``.  ``NO_VALUATION`` means every minor of that size is zero.
    """
    A = np.asarray(A)
    big = A.dtype == object
    if not big and p == 0:
        m, n, D = A.shape
        k = min(m, n)
        bound = math.factorial(k) * (int(np.abs(A).max(initial=0)) * D) ** k
        big = bound >= 2 ** 62
    if big:
        return minor_valuations_numpy(np.asarray(A, dtype=object), int(p))
    A = np.ascontiguousarray(A, dtype=np.int64)
    if p:
        A = A % p
    if HAVE_NUMBA:
        return _minor_valuations_jit(A, int(p))
    return minor_valuations_numpy(A, int(p))
