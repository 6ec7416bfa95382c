"""The sets Omega_{j,nu} = {beta mod f^nu : beta + x^{-nu d} beta(x^-1) = 0} for a
self-reciprocal factor f = f_j of even degree d, plus the M_l solution spaces
that parameterize the x+1 component.

``omega_enumerate`` walks the digits beta_0, beta_1, ... of beta one at a time:
each digit is confined to a translate of a trace preimage, and the higher
f-adic digits of the residual feed correction terms into the later steps.
``omega_kernel_oracle`` solves the same congruence as a plain linear system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import NotSelfReciprocalFactor, ThmAssumptionViolated
from .factor import FactorData, SELF_RECIPROCAL
from .gf import GF2m, Poly, padd, pnorm, pmul
from .linalg import nullspace, span_combinations
from .quotient import QuotRing, TraceCtx


@dataclass
class OmegaSet:
    j: int
    nu: int
    ring: QuotRing
    elements: list  # Poly, sorted by digit masks
    trails: dict = field(default_factory=dict)     # element -> (beta_0, ..., beta_{nu-1})
    deltas: dict = field(default_factory=dict)     # digit prefix -> {l: delta^(l)}
    wsets: dict = field(default_factory=dict)      # digit prefix -> W-set
    stray_deltas: list = field(default_factory=list)  # (prefix, l) whose lone term is outside H

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, b):
        return tuple(b) in set(self.elements)


def _check_factor(fd: FactorData, j: int):
    if not 2 <= j <= fd.rho or fd[j].kind != SELF_RECIPROCAL:
        raise NotSelfReciprocalFactor(f"j={j} is not in the self-reciprocal range 2..{fd.rho}")
    return fd[j].poly


def residual(ring: QuotRing, beta: Poly, e: int) -> Poly:
    """beta + x^{-e} beta(x^{-1}) in the ring."""
    return padd(beta, ring.mul(ring.x_power(-e), ring.substitute_x_inverse(beta)))


def omega_membership(fd: FactorData, j: int, nu: int, beta) -> bool:
    f = _check_factor(fd, j)
    ring = QuotRing(fd.field, f, nu)
    beta = ring.reduce(tuple(beta))
    return not residual(ring, beta, nu * ring.d)


def omega_enumerate(fd: FactorData, j: int, nu: int) -> OmegaSet:
    f = _check_factor(fd, j)
    if nu < 1:
        raise ValueError("nu must be >= 1")
    F = fd.field
    ring = QuotRing(F, f, nu)
    base = QuotRing(F, f, 1)
    tc = TraceCtx(F, f)
    d = ring.d
    half = d // 2

    def lift(i):  # x^{(nu+i) d/2} in F_j
        return base.x_power((nu + i) * half)

    def unlift(i):
        return base.x_power(-(nu + i) * half)

    out = OmegaSet(j=j, nu=nu, ring=ring, elements=[])

    def wset(i, c):
        target = base.mul(lift(i), c)
        if not tc.in_subfield(target):
            raise ThmAssumptionViolated(f"accumulated correction for digit {i} is not in the subfield")
        return [base.mul(unlift(i), xi) for xi in tc.preimage(target)]

    def walk(prefix, acc):
        i = len(prefix)
        c = acc.get(i, ())
        W = wset(i, c)
        out.wsets[prefix] = W
        for b in W:
            trail = prefix + (b,)
            if i == nu - 1:
                beta = ring.reassemble(trail)
                out.trails[beta] = trail
                continue
            E = padd(residual(ring, b, (nu + i) * d), c)
            digs = ring.expand(E)[: nu - i]
            if digs[0]:
                raise ThmAssumptionViolated("leading digit of the residual does not vanish")
            deltas = {}
            nxt = dict(acc)
            for l in range(i + 1, nu):
                dl = digs[l - i]
                # a single term may miss the subfield; only the running sum must land in it
                if not tc.in_subfield(base.mul(lift(l), dl)):
                    out.stray_deltas.append((trail, l))
                deltas[l] = dl
                nxt[l] = padd(nxt.get(l, ()), dl)
            out.deltas[trail] = deltas
            walk(trail, nxt)

    walk((), {})
    out.elements = sorted(out.trails, key=ring.digit_key)
    return out


def _coords(F: GF2m, a: Poly, n: int) -> list[int]:
    return list(a) + [0] * (n - len(a))


def omega_kernel_oracle(fd: FactorData, j: int, nu: int) -> OmegaSet:
    """Kernel of beta -> x^{2 nu d - 1} beta + rev(beta) mod f^nu.

    rev is the coefficient reversal of length nu*d, i.e. x^{nu d - 1} beta(1/x)
    as a polynomial, so no ring inverse is involved; since x is a unit the
    kernel is exactly Omega_{j,nu}.
    """
    f = _check_factor(fd, j)
    F = fd.field
    ring = QuotRing(F, f, nu)
    D = ring.dim
    shift = ring.pow((0, 1), 2 * D - 1)
    cols = []
    for i in range(D):
        e = (0,) * i + (1,)
        rev = (0,) * (D - 1 - i) + (1,)
        img = ring.reduce(padd(pmul(F, shift, e), rev))
        cols.append(_coords(F, img, D))
    L = np.array(cols, dtype=np.int64).T
    basis = nullspace(F, L)
    elems = {pnorm(int(c) for c in v) for v in span_combinations(F, basis)}
    return OmegaSet(j=j, nu=nu, ring=ring, elements=sorted(elems, key=ring.digit_key))


# -- M_l and the slices S_l^[delta] ---------------------------------------

G2 = np.array([[1, 0], [1, 1]], dtype=np.int64)


@lru_cache(maxsize=None)
def _G(lam: int) -> np.ndarray:
    if lam == 0:
        return np.ones((1, 1), dtype=np.int64)
    return np.kron(G2, _G(lam - 1)) % 2


def _M_from(lam: int, l: int) -> np.ndarray:
    n = 1 << lam
    return ((np.eye(n, dtype=np.int64) + _G(lam)) % 2)[:l, :l]


def kronecker_M(l: int) -> np.ndarray:
    if l < 1:
        raise ValueError("l must be >= 1")
    lam = max(1, (l - 1).bit_length())
    M = _M_from(lam, l)
    if not np.array_equal(M, _M_from(lam + 1, l)):
        raise AssertionError("upper-left blocks of I + G disagree across orders")
    return M


@dataclass
class SolutionSpace:
    F: GF2m
    l: int
    delta: int
    basis: np.ndarray   # rows of length l - delta
    M: np.ndarray

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def __len__(self):
        return self.F.order ** self.dim

    def vectors(self):
        """All members as tuples (b_delta, ..., b_{l-1}), in lexicographic
        order of the coefficients on the basis."""
        for v in span_combinations(self.F, self.basis):
            yield tuple(int(c) for c in v)


def solution_space(F: GF2m, l: int, delta: int) -> SolutionSpace:
    if not 0 <= delta < l:
        raise ValueError(f"need 0 <= delta < l, got delta={delta}, l={l}")
    M = kronecker_M(l)
    sub = M[:, delta:]
    # M has 0/1 entries, so the GF(2) kernel spans the GF(2^m) kernel
    basis = nullspace(GF2m(1), sub)
    return SolutionSpace(F=F, l=l, delta=delta, basis=basis, M=M)
