"""Dense linear algebra over F_p.

Matrices are ``numpy.int64`` arrays with entries in ``range(p)``.  The
elimination kernels are compiled with numba; products go through float64
BLAS, which is exact as long as every partial sum stays below 2^53.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _powmod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = r * a % p
        a = a * a % p
        e >>= 1
    return r


@njit(cache=True)
def _rref_inplace(A, p, full):
    m, n = A.shape
    piv = np.empty(min(m, n), np.int64)
    r = 0
    for c in range(n):
        if r == m:
            break
        pr = -1
        for i in range(r, m):
            if A[i, c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(c, n):
                t = A[r, j]
                A[r, j] = A[pr, j]
                A[pr, j] = t
        iv = _powmod(A[r, c], p - 2, p)
        if iv != 1:
            for j in range(c, n):
                A[r, j] = A[r, j] * iv % p
        start = 0 if full else r + 1
        for i in range(start, m):
            if i == r:
                continue
            f = A[i, c]
            if f != 0:
                f = p - f
                for j in range(c, n):
                    v = A[r, j]
                    if v != 0:
                        A[i, j] = (A[i, j] + f * v) % p
        piv[r] = c
        r += 1
    return piv[:r]


def as_mod(A, p: int) -> np.ndarray:
    return np.mod(np.asarray(A, dtype=np.int64), p)


def rref(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = as_mod(A, p).copy()
    if M.ndim != 2:
        raise ValueError("expected a 2-d array")
    if M.size == 0:
        return M, []
    piv = _rref_inplace(M, p, True)
    return M, [int(c) for c in piv]


def echelon(A, p: int) -> tuple[np.ndarray, list[int]]:
    """Row echelon form (only rows below each pivot are cleared)."""
    M = as_mod(A, p).copy()
    if M.size == 0:
        return M, []
    piv = _rref_inplace(M, p, False)
    return M, [int(c) for c in piv]


def rank(A, p: int) -> int:
    M = np.asarray(A)
    if M.size == 0:
        return 0
    if M.shape[0] > M.shape[1]:
        M = M.T
    return len(echelon(M, p)[1])


def kernel_basis(A, p: int) -> np.ndarray:
    """Basis of the right kernel, one vector per row of the result."""
    M = as_mod(A, p)
    if M.ndim != 2:
        raise ValueError("expected a 2-d array")
    m, n = M.shape
    if n == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if m == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(M, p)
    r = len(piv)
    free = [j for j in range(n) if j not in set(piv)]
    K = np.zeros((len(free), n), dtype=np.int64)
    pivarr = np.array(piv, dtype=np.int64)
    for t, f in enumerate(free):
        K[t, f] = 1
        if r:
            K[t, pivarr] = (-R[:r, f]) % p
    return K


def left_kernel_basis(A, p: int) -> np.ndarray:
    return kernel_basis(np.asarray(A).T, p)


def row_space(A, p: int) -> np.ndarray:
    """Reduced echelon basis of the row space."""
    R, piv = rref(A, p)
    return R[:len(piv)]


def solve(A, b, p: int) -> np.ndarray | None:
    """One solution x of A x = b, or None."""
    A = as_mod(A, p)
    b = as_mod(b, p).reshape(-1, 1)
    m, n = A.shape
    R, piv = rref(np.hstack([A, b]), p)
    if piv and piv[-1] == n:
        return None
    x = np.zeros(n, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, n]
    return x


def inverse(A, p: int) -> np.ndarray:
    A = as_mod(A, p)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def matmul_mod(A, B, p: int) -> np.ndarray:
    """Exact product mod p using float64 BLAS with chunked inner dimension."""
    A = np.asarray(A)
    B = np.asarray(B)
    k = A.shape[1]
    if k == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    step = max(1, min(k, (1 << 52) // ((p - 1) * (p - 1))))
    Af = A.astype(np.float64)
    Bf = B.astype(np.float64)
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.float64)
    for s in range(0, k, step):
        out += Af[:, s:s + step] @ Bf[s:s + step]
        out = np.fmod(out, p)
    return out.astype(np.int64) % p


def independent_rows(A, p: int) -> list[int]:
    """Indices of a maximal set of linearly independent rows, greedy in order."""
    A = as_mod(A, p)
    R, piv = echelon(A.T, p)
    return piv
