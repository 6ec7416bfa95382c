"""Dense linear algebra over GF(2^m) on numpy integer arrays.

Entries are element masks; multiplication goes through exp/log tables built
once per field, so every row operation is a single vectorized expression.
"""

from __future__ import annotations

import numpy as np

from .gf import GF2m

_TABLES: dict = {}


def _tables(F: GF2m):
    key = (F.m, F.modulus)
    t = _TABLES.get(key)
    if t is None:
        q1 = F.order - 1
        exp = np.zeros(2 * q1 + 1, dtype=np.int64)
        log = np.zeros(F.order, dtype=np.int64)
        # find a generator by brute force (deterministic)
        for g in range(1 if F.m == 1 else 2, F.order):
            v, seen_one = 1, False
            for i in range(q1):
                if i and v == 1:
                    seen_one = True
                    break
                exp[i] = v
                log[v] = i
                v = F.mul(v, g)
            if not seen_one:
                break
        exp[q1:2 * q1] = exp[:q1]
        t = (exp, log, q1)
        _TABLES[key] = t
    return t


def gmul(F: GF2m, a, b):
    """Elementwise product of broadcastable arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if F.m == 1:
        return a & b
    exp, log, _ = _tables(F)
    out = exp[log[a] + log[b]]
    return np.where((a == 0) | (b == 0), 0, out)


def ginv(F: GF2m, a: int) -> int:
    return F.inv(int(a))


def matmul(F: GF2m, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    if F.m == 1:
        # parity of the integer product
        return (A @ B) & 1
    prod = gmul(F, A[:, :, None], B[None, :, :])
    return np.bitwise_xor.reduce(prod, axis=1) if A.shape[1] else np.zeros(
        (A.shape[0], B.shape[1]), dtype=np.int64)


def rref(F: GF2m, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = np.array(A, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("rref needs a 2-D array")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r] = gmul(F, M[r], F.inv(lead))
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            if F.m == 1:
                M[hit] ^= M[r]
            else:
                M[hit] ^= gmul(F, col[hit][:, None], M[r][None, :])
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F: GF2m, A) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: GF2m, A) -> np.ndarray:
    """Basis (as rows) of {v : A v = 0}."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, piv = rref(F, A) if A.shape[0] else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = R[r, fc]  # char 2: -x = x
    return basis


def in_rowspace(F: GF2m, R: np.ndarray, pivots: list[int], v) -> bool:
    """Membership of v in the row space of an rref matrix."""
    v = np.array(v, dtype=np.int64, copy=True)
    for r, c in enumerate(pivots):
        if v[c]:
            v ^= gmul(F, R[r], int(v[c]))
    return not v.any()


def span_combinations(F: GF2m, basis: np.ndarray):
    """Yield every F-linear combination of the basis rows, in lexicographic
    order of the coefficient tuple (first row most significant)."""
    from itertools import product

    basis = np.asarray(basis, dtype=np.int64)
    k, n = basis.shape if basis.ndim == 2 else (0, 0)
    for coeffs in product(range(F.order), repeat=k):
        v = np.zeros(n, dtype=np.int64)
        for c, row in zip(coeffs, basis):
            if c:
                v ^= gmul(F, row, c)
        yield v
