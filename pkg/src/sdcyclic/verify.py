"""Independent checks on assembled codes: self-duality under the R-valued inner
product, the Gray image phi(a + ub) = (b | a + b), and weight distributions.

A code C in R^N, R = GF(2^m) + uGF(2^m), is handled as the GF(2^m)-space
{(a | b)} inside GF(2^m)^{2N}; it is self-dual exactly when it is
self-orthogonal and has dimension N.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .codes import CodeRecord
from .errors import GrayPropertyViolated, NotSelfDual, ShapeError, TooLargeForExhaustive
from .gf import GF2m, Poly, padd
from .linalg import gmul, matmul, rank, rref
from .quotient import QuotRing

DEFAULT_CAP = 24


@dataclass
class RVector:
    """Entries a_i + u b_i."""

    a: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        self.a = np.asarray(self.a, dtype=np.int64)
        self.b = np.asarray(self.b, dtype=np.int64)
        if self.a.shape != self.b.shape:
            raise ShapeError("a and b parts differ in length")

    def __len__(self):
        return len(self.a)

    def shift(self, k: int = 1) -> "RVector":
        """Multiply by x^k (cyclic shift)."""
        return RVector(np.roll(self.a, k), np.roll(self.b, k))


def r_inner(F: GF2m, v: RVector, w: RVector) -> tuple[int, int]:
    if len(v) != len(w):
        raise ShapeError(f"lengths {len(v)} and {len(w)} differ")
    aa = np.bitwise_xor.reduce(gmul(F, v.a, w.a)) if len(v) else 0
    ab = gmul(F, v.a, w.b) ^ gmul(F, v.b, w.a)
    ab = np.bitwise_xor.reduce(ab) if len(v) else 0
    return int(aa), int(ab)


def _dense(a: Poly, N: int) -> np.ndarray:
    v = np.zeros(N, dtype=np.int64)
    v[: len(a)] = a
    return v


def _circulant(v: np.ndarray) -> np.ndarray:
    N = len(v)
    idx = (np.arange(N)[None, :] - np.arange(N)[:, None]) % N
    return v[idx]  # row i = x^i * v


@dataclass
class SpanBasis:
    F: GF2m
    N: int
    rows: np.ndarray           # rref rows, shape (k, 2N): (a | b)
    pivots: list = field(default_factory=list)

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def A(self) -> np.ndarray:
        return self.rows[:, : self.N]

    @property
    def B(self) -> np.ndarray:
        return self.rows[:, self.N:]


def generator_rows(N: int, generators) -> np.ndarray:
    """Rows x^i g and u x^i g for every generator g = a + ub."""
    blocks = []
    zero = np.zeros((N, N), dtype=np.int64)
    for a, b in generators:
        Ca, Cb = _circulant(_dense(a, N)), _circulant(_dense(b, N))
        blocks.append(np.hstack([Ca, Cb]))
        blocks.append(np.hstack([zero, Ca]))  # u * (a + ub) = u a
    if not blocks:
        return np.zeros((0, 2 * N), dtype=np.int64)
    return np.vstack(blocks)


def span_basis_of(F: GF2m, N: int, generators) -> SpanBasis:
    M = generator_rows(N, generators)
    if M.shape[0] == 0:
        return SpanBasis(F, N, M, [])
    R, piv = rref(F, M)
    return SpanBasis(F, N, R, piv)


def span_basis(rec: CodeRecord) -> SpanBasis:
    return span_basis_of(rec.field, rec.N, rec.generators)


def gram(F: GF2m, sb: SpanBasis) -> tuple[np.ndarray, np.ndarray]:
    A, B = sb.A, sb.B
    G0 = matmul(F, A, A.T)
    AB = matmul(F, A, B.T)
    G1 = AB ^ AB.T
    return G0, G1


def check_self_dual(F: GF2m, N: int, generators) -> tuple[bool, object]:
    sb = span_basis_of(F, N, generators)
    if sb.k:
        G0, G1 = gram(F, sb)
        bad = np.argwhere((G0 != 0) | (G1 != 0))
        if bad.size:
            i, j = (int(t) for t in bad[0])
            return False, {"reason": "not orthogonal", "rows": [i, j],
                           "inner": [int(G0[i, j]), int(G1[i, j])]}
    if sb.k != N:
        return False, {"reason": "dimension", "dim": sb.k, "expected": N}
    return True, sb


def verify_self_dual(rec: CodeRecord) -> SpanBasis:
    ok, info = check_self_dual(rec.field, rec.N, rec.generators)
    if not ok:
        rec.verified = "failed"
        raise NotSelfDual(f"code {rec.index} is not self-dual: {info}", witness=info)
    rec.verified = "confirmed"
    return info


def is_self_dual(rec: CodeRecord) -> bool:
    try:
        verify_self_dual(rec)
        return True
    except NotSelfDual:
        return False


# -- Gray image ------------------------------------------------------------

def gray_map(v: RVector) -> np.ndarray:
    return np.concatenate([v.b, v.a ^ v.b])


def gray_rows(N: int, rows: np.ndarray) -> np.ndarray:
    A, B = rows[:, :N], rows[:, N:]
    return np.hstack([B, A ^ B])


def gray_matrix(rec: CodeRecord, sb: SpanBasis = None) -> np.ndarray:
    sb = sb or span_basis(rec)
    return gray_rows(rec.N, sb.rows)


def gray_image_checks(rec: CodeRecord, sb: SpanBasis = None) -> dict:
    F, N = rec.field, rec.N
    G = gray_matrix(rec, sb)
    rk = rank(F, G)
    GG = matmul(F, G, G.T)
    if rk != N:
        raise GrayPropertyViolated(f"Gray image of code {rec.index} has rank {rk}, expected {N}")
    if GG.any():
        raise GrayPropertyViolated(f"Gray image of code {rec.index} is not self-orthogonal")
    shifted = np.hstack([np.roll(G[:, :N], 1, axis=1), np.roll(G[:, N:], 1, axis=1)])
    if rank(F, np.vstack([G, shifted])) != N:
        raise GrayPropertyViolated(f"Gray image of code {rec.index} is not 2-quasi-cyclic")
    return {"index": rec.index, "length": 2 * N, "rank": rk, "self_orthogonal": True,
            "quasi_cyclic": True}


# -- weights ---------------------------------------------------------------

def _binary_rows(F: GF2m, rows: np.ndarray) -> np.ndarray:
    """GF(2)-basis rows alpha^t * r for t < m."""
    if F.m == 1:
        return rows
    out = [gmul(F, rows, 1 << t) for t in range(F.m)]
    return np.vstack(out)


def _pack(F: GF2m, rows: np.ndarray) -> np.ndarray:
    """Pack each row (symbols of m bits) into uint64 words."""
    m = F.m
    k, L = rows.shape
    bits = ((rows[:, :, None] >> np.arange(m)[None, None, :]) & 1).reshape(k, L * m)
    nwords = max(1, -(-(L * m) // 64))
    pad = np.zeros((k, nwords * 64), dtype=np.uint64)
    pad[:, : L * m] = bits
    words = pad.reshape(k, nwords, 64)
    weights = (np.uint64(1) << np.arange(64, dtype=np.uint64))
    return np.bitwise_or.reduce(words * weights, axis=2)


def _all_words(packed: np.ndarray) -> np.ndarray:
    cw = np.zeros((1, packed.shape[1]), dtype=np.uint64)
    for r in packed:
        cw = np.vstack([cw, cw ^ r])
    return cw


def _block_mask(m: int, nwords: int, L: int) -> np.ndarray:
    mask = 0
    for i in range(L):
        mask |= 1 << (i * m)
    return np.array([(mask >> (64 * w)) & ((1 << 64) - 1) for w in range(nwords)], dtype=np.uint64)


def _fold_nonzero(cw: np.ndarray, m: int, L: int) -> np.ndarray:
    """One bit per symbol: the OR of its m bits (m must divide 64)."""
    if m == 1:
        return cw
    acc = cw.copy()
    for t in range(1, m):
        # shifting right across word boundaries is unnecessary when m | 64
        acc |= cw >> np.uint64(t)
    return acc & _block_mask(m, cw.shape[1], L)


def _hamming_hist(F: GF2m, rows: np.ndarray, L: int) -> Counter:
    cw = _all_words(_pack(F, _binary_rows(F, rows)))
    nz = _fold_nonzero(cw, F.m, L)
    w = np.bitwise_count(nz).sum(axis=1)
    return Counter({int(k): int(v) for k, v in zip(*np.unique(w, return_counts=True))})


def _lee_hist(F: GF2m, rows: np.ndarray, N: int) -> Counter:
    """Lee weights from the R-side basis: coordinate a + ub weighs
    [b != 0] + [a + b != 0]."""
    bin_rows = _binary_rows(F, rows)
    pa, pb = _pack(F, bin_rows[:, :N]), _pack(F, bin_rows[:, N:])
    w = pa.shape[1]
    cw = _all_words(np.hstack([pa, pb]))
    A, B = cw[:, :w], cw[:, w:]
    nb = _fold_nonzero(B, F.m, N)
    nab = _fold_nonzero(A ^ B, F.m, N)
    wt = np.bitwise_count(nb).sum(axis=1) + np.bitwise_count(nab).sum(axis=1)
    return Counter({int(k): int(v) for k, v in zip(*np.unique(wt, return_counts=True))})


def weight_distribution(rec: CodeRecord, cap: int = DEFAULT_CAP, sb: SpanBasis = None) -> dict:
    """Lee-weight histogram of C, cross-checked against the Hamming histogram of
    phi(C) computed from an independently reduced Gray generator matrix."""
    F, N = rec.field, rec.N
    if 64 % F.m:
        raise TooLargeForExhaustive(f"weight walk supports m dividing 64, got m={F.m}")
    sb = sb or span_basis(rec)
    if F.m * sb.k > cap:
        raise TooLargeForExhaustive(f"m*k = {F.m * sb.k} exceeds cap {cap}")
    if sb.k == 0:
        return {0: 1}
    lee = _lee_hist(F, sb.rows, N)
    G = gray_rows(N, generator_rows(N, rec.generators))
    Gr, _ = rref(F, G)
    ham = _hamming_hist(F, Gr, 2 * N)
    if lee != ham:
        raise GrayPropertyViolated(f"Lee and Gray-Hamming histograms differ for code {rec.index}")
    return dict(sorted(lee.items()))


# -- cross-check on Case II payloads ----------------------------------------

def case2_payload_condition(fd, spec, s: int) -> bool:
    """b + delta_j x^{-d} b(x^-1) = 0 mod f_j^{t-1} with t = 2 nu."""
    nu = spec.param_dict.get("nu")
    if nu is None:
        return True
    F = fd.field
    f = fd[spec.j].poly
    ring = QuotRing(F, f, 2 * nu - 1)
    b = ring.reduce(spec.b)
    lhs = padd(b, ring.mul(ring.x_power(-len(f) + 1), ring.substitute_x_inverse(b)))
    return not lhs
