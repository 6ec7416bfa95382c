"""Quotient rings GF(2^m)[x]/(f^k) for monic irreducible f, with f-adic digits,
the substitution x -> x^-1, and the index-2 trace of GF(2^m)[x]/(f).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

import numpy as np

from .errors import NotInSubfield, TraceUndefined, XNotInvertible
from .gf import (
    GF2m,
    Poly,
    padd,
    pdivmod,
    pmask,
    pmod,
    pmul,
    pmulmod,
    pnorm,
    poly_from_mask,
    poly_xgcd,
    ppow,
    ppowmod,
    pscale,
    psum,
)
from .factor import prime_factors
from .linalg import rref


class QuotRing:
    """The ring GF(2^m)[x]/(f^k)."""

    def __init__(self, F: GF2m, f: Poly, k: int = 1):
        if k < 1:
            raise ValueError("exponent k must be >= 1")
        if len(f) < 2 or f[-1] != 1:
            raise ValueError("f must be monic of positive degree")
        self.F = F
        self.f = tuple(f)
        self.k = k
        self.d = len(f) - 1
        self.modulus = ppow(F, self.f, k)
        self.dim = k * self.d

    def __repr__(self):
        return f"QuotRing(f={self.f}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, QuotRing) and (self.F, self.f, self.k) == (other.F, other.f, other.k)

    def __hash__(self):
        return hash((self.F, self.f, self.k))

    def reduce(self, a: Poly) -> Poly:
        return pmod(self.F, pnorm(a), self.modulus)

    def add(self, a: Poly, b: Poly) -> Poly:
        return padd(a, b)

    def mul(self, a: Poly, b: Poly) -> Poly:
        return pmulmod(self.F, a, b, self.modulus)

    def pow(self, a: Poly, e: int) -> Poly:
        if e < 0:
            return ppowmod(self.F, self.inverse(a), -e, self.modulus)
        return ppowmod(self.F, a, e, self.modulus)

    def inverse(self, a: Poly) -> Poly:
        g, v, _ = poly_xgcd(self.F, self.reduce(a), self.modulus)
        if g != (1,):
            raise ZeroDivisionError("element is not a unit")
        return self.reduce(v)

    def elem(self, a) -> "QuotElem":
        return QuotElem(self, self.reduce(tuple(a)))

    # -- x^{-1} -------------------------------------------------------------

    @cached_property
    def x_inv(self) -> Poly:
        if self.f[0] == 0:
            raise XNotInvertible("f(0) = 0, so x is a zero divisor")
        return self.inverse((0, 1))

    @cached_property
    def _xinv_powers(self) -> list[Poly]:
        out = [self.reduce((1,))]
        for _ in range(1, self.dim):
            out.append(self.mul(out[-1], self.x_inv))
        return out

    def x_power(self, e: int) -> Poly:
        """x^e for any integer e (negative via x^-1)."""
        if e >= 0:
            return self.pow((0, 1), e)
        return self.pow(self.x_inv, -e)

    def substitute_x_inverse(self, b: Poly) -> Poly:
        """b(x^-1) reduced in the ring, for b already reduced."""
        b = self.reduce(b)
        pw = self._xinv_powers
        return psum(pscale(self.F, c, pw[i]) for i, c in enumerate(b) if c)

    # -- f-adic expansion ---------------------------------------------------

    def expand(self, a: Poly) -> list[Poly]:
        """Digits b_0..b_{k-1} (each of degree < d) with a = sum b_i f^i."""
        a = self.reduce(a)
        digits = []
        for _ in range(self.k):
            a, r = pdivmod(self.F, a, self.f)
            digits.append(r)
        return digits

    def reassemble(self, digits) -> Poly:
        out: Poly = ()
        for b in reversed(list(digits)):
            out = padd(pmul(self.F, out, self.f), tuple(b))
        return self.reduce(out)

    def digit_range(self, lo: int, hi: int) -> list[Poly]:
        """All sum_{i=lo}^{hi-1} b_i f^i, lexicographic in (mask b_lo, ..., mask b_{hi-1}).

        An empty range (lo >= hi) gives [0].
        """
        if lo >= hi:
            return [()]
        F, d = self.F, self.d
        digits = [poly_from_mask(F, v) for v in range(F.order ** d)]
        out = []
        for choice in product(digits, repeat=hi - lo):
            out.append(self.reassemble([()] * lo + list(choice)))
        return out

    def elements(self) -> list[Poly]:
        return [poly_from_mask(self.F, v) for v in range(self.F.order ** self.dim)]

    def digit_key(self, a: Poly) -> tuple[int, ...]:
        return tuple(pmask(self.F, b) for b in self.expand(a))


@dataclass(frozen=True)
class QuotElem:
    ring: QuotRing
    value: Poly

    def __add__(self, other):
        return QuotElem(self.ring, padd(self.value, other.value))

    def __mul__(self, other):
        return QuotElem(self.ring, self.ring.mul(self.value, other.value))

    def digits(self) -> list[Poly]:
        return self.ring.expand(self.value)


def fadic_expand(e: QuotElem) -> list[QuotElem]:
    base = QuotRing(e.ring.F, e.ring.f, 1)
    return [QuotElem(base, b) for b in e.ring.expand(e.value)]


def x_inverse(ring: QuotRing) -> QuotElem:
    return QuotElem(ring, ring.x_inv)


def substitute_x_inverse(b: QuotElem) -> QuotElem:
    return QuotElem(b.ring, b.ring.substitute_x_inverse(b.value))


# -- trace onto the index-2 subfield -------------------------------------

def multiplicative_order_is(ring: QuotRing, z: Poly, order: int, primes) -> bool:
    one = ring.reduce((1,))
    if ring.pow(z, order) != one:
        return False
    return all(ring.pow(z, order // p) != one for p in primes)


class TraceCtx:
    """Tr(xi) = xi + xi^{q'} from GF(2^m)[x]/(f) onto its subfield of order q'."""

    def __init__(self, F: GF2m, f: Poly):
        d = len(f) - 1
        if d % 2:
            raise TraceUndefined(f"trace onto the index-2 subfield needs even degree, got {d}")
        self.ring = QuotRing(F, f, 1)
        self.F, self.d = F, d
        self.qp = F.order ** (d // 2)
        Q = F.order ** d
        primes = prime_factors(Q - 1)
        for v in range(2, Q):
            z = poly_from_mask(F, v)
            if multiplicative_order_is(self.ring, z, Q - 1, primes):
                self.zeta = z
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive element")
        eta = self.ring.pow(self.zeta, self.qp + 1)
        H = [()]
        h = self.ring.reduce((1,))
        for _ in range(self.qp - 1):
            H.append(h)
            h = self.ring.mul(h, eta)
        self.H = sorted(H, key=lambda p: pmask(F, p))
        self._Hset = frozenset(self.H)
        # matrix of Tr on the power basis; Tr is GF(2^m)-linear because q' is a power of 2^m
        T = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            img = self.trace((0,) * i + (1,))
            for r, c in enumerate(img):
                T[r, i] = c
        self._T = T

    def in_subfield(self, a: Poly) -> bool:
        return self.ring.reduce(a) in self._Hset

    def frob(self, a: Poly) -> Poly:
        return self.ring.pow(a, self.qp)

    def trace(self, xi: Poly) -> Poly:
        xi = self.ring.reduce(xi)
        return padd(xi, self.frob(xi))

    def _solve(self, alpha: Poly) -> Poly:
        d = self.d
        aug = np.zeros((d, d + 1), dtype=np.int64)
        aug[:, :d] = self._T
        for r, c in enumerate(alpha):
            aug[r, d] = c
        R, piv = rref(self.F, aug)
        if d in piv:  # pragma: no cover - excluded by the subfield check
            raise NotInSubfield("trace equation is inconsistent")
        sol = [0] * d
        for r, c in enumerate(piv):
            sol[c] = int(R[r, d])
        return pnorm(sol)

    def preimage(self, alpha: Poly) -> list[Poly]:
        alpha = self.ring.reduce(alpha)
        if self.frob(alpha) != alpha:
            raise NotInSubfield("trace preimage requested for an element outside the subfield")
        hat = self._solve(alpha)
        out = sorted((padd(hat, h) for h in self.H), key=lambda p: pmask(self.F, p))
        return out


def trace(tc: TraceCtx, xi) -> Poly:
    return tc.trace(xi.value if isinstance(xi, QuotElem) else xi)


def trace_preimage(tc: TraceCtx, alpha) -> list[Poly]:
    return tc.preimage(alpha.value if isinstance(alpha, QuotElem) else alpha)
