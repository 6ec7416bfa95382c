"""Factorization of x^n - 1 over GF(2^m), reciprocal classification, CRT idempotents.

The factors come from 2^m-cyclotomic cosets mod n: a primitive n-th root of
unity zeta is located in the splitting field GF(2^m)[y]/(g(y)), and every coset
J yields f_J(x) = prod_{i in J} (x - zeta^i), whose coefficients are constants
in y and therefore already live in the base field.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

from .errors import ClassificationInvariantBroken, EvenLengthNotCoprime
from .gf import (
    GF2m,
    Poly,
    padd,
    pdivmod,
    pgcd,
    pmask,
    pmod,
    pmod_xn1,
    pmonic,
    pmul,
    pmul_xn1,
    pmulmod,
    poly_from_mask,
    poly_reciprocal,
    poly_xgcd,
    ppowmod,
    pscale,
)

SELF_RECIPROCAL = "SelfReciprocal"
PAIR_FIRST = "PairFirst"
PAIR_SECOND = "PairSecond"


def prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    a %= n
    k, v = 1, a
    while v != 1:
        v = v * a % n
        k += 1
    return k


def cyclotomic_cosets(q: int, n: int) -> list[tuple[int, ...]]:
    """q-cyclotomic cosets modulo n, each sorted, listed by least element."""
    seen = set()
    cosets = []
    for i in range(n):
        if i in seen:
            continue
        c = []
        j = i
        while j not in c:
            c.append(j)
            j = j * q % n
        seen.update(c)
        cosets.append(tuple(sorted(c)))
    return cosets


def xn_minus_1(n: int) -> Poly:
    return (1,) + (0,) * (n - 1) + (1,)


def is_irreducible(F: GF2m, g: Poly) -> bool:
    """Ben-Or irreducibility test over GF(2^m)."""
    t = len(g) - 1
    if t < 1:
        return False
    if t == 1:
        return True
    y = (0, 1)
    h = y
    for _ in range(t // 2):
        h = ppowmod(F, h, F.order, g)
        if pgcd(F, padd(h, y), g) != (1,):
            return False
    return True


def least_irreducible(F: GF2m, t: int) -> Poly:
    """First monic irreducible of degree t over F, in coefficient-mask order."""
    for low in range(F.order ** t):
        g = poly_from_mask(F, low)
        g = g + (0,) * (t - len(g)) + (1,)
        if is_irreducible(F, g):
            return g
    raise AssertionError(f"no irreducible of degree {t}")  # unreachable


@dataclass(frozen=True)
class Factor:
    poly: Poly
    degree: int
    coset: tuple[int, ...]
    kind: Optional[str] = None
    partner: Optional[int] = None  # 1-based index of the reciprocal partner
    delta: int = 1


@dataclass(frozen=True)
class FactorData:
    """x^n - 1 = prod f_j; indices j are 1-based, j = 1 is x - 1."""

    field: GF2m
    n: int
    factors: tuple[Factor, ...]
    rho: int = 0
    epsilon: int = 0
    s: Optional[int] = None
    idempotents: tuple[Poly, ...] = ()
    classified: bool = False

    @property
    def r(self) -> int:
        return len(self.factors)

    def __getitem__(self, j: int) -> Factor:
        if not 1 <= j <= len(self.factors):
            raise IndexError(f"factor index {j} outside 1..{len(self.factors)}")
        return self.factors[j - 1]

    def self_reciprocal_indices(self) -> range:
        return range(2, self.rho + 1)

    def pair_indices(self) -> range:
        return range(self.rho + 1, self.rho + self.epsilon + 1)

    @property
    def length(self) -> int:
        if self.s is None:
            raise ValueError("length needs s; build with idempotents(fd, s)")
        return (1 << self.s) * self.n


def factor_xn_minus_1(F: GF2m, n: int) -> FactorData:
    if not isinstance(n, int) or n < 1 or n % 2 == 0:
        raise EvenLengthNotCoprime(f"n={n!r} must be a positive odd integer")
    q = F.order
    cosets = cyclotomic_cosets(q, n)
    t = multiplicative_order(q, n)
    g = least_irreducible(F, t)
    Q = q ** t

    def emul(a, b):
        return pmulmod(F, a, b, g)

    def epow(a, e):
        return ppowmod(F, a, e, g)

    one = pmod(F, (1,), g)
    zeta = one
    if n > 1:
        ps = prime_factors(n)
        for mask in range(2, Q):
            z = poly_from_mask(F, mask)
            w = epow(z, (Q - 1) // n)
            if w != one and all(epow(w, n // p) != one for p in ps):
                zeta = w
                break
        else:  # pragma: no cover
            raise AssertionError("no primitive n-th root of unity")

    factors = []
    for J in cosets:
        # polynomial in x with coefficients in the extension
        f = [one]
        for i in J:
            root = epow(zeta, i)
            nxt = [()] * (len(f) + 1)
            for k, c in enumerate(f):
                nxt[k + 1] = padd(nxt[k + 1], c)
                nxt[k] = padd(nxt[k], emul(c, root))
            f = nxt
        if any(len(c) > 1 for c in f):
            raise AssertionError("coset polynomial escaped the base field")
        poly = tuple(c[0] if c else 0 for c in f)
        factors.append(Factor(poly=poly, degree=len(J), coset=J))

    prod: Poly = (1,)
    for fa in factors:
        prod = pmul(F, prod, fa.poly)
    if prod != xn_minus_1(n):
        raise AssertionError("factor product does not reproduce x^n - 1")
    return FactorData(field=F, n=n, factors=tuple(factors))


def classify_reciprocal(fd: FactorData) -> FactorData:
    F, n = fd.field, fd.n
    by_poly = {fa.poly: fa for fa in fd.factors}
    one = [fa for fa in fd.factors if fa.coset == (0,)]
    if len(one) != 1 or one[0].poly != (1, 1):
        raise ClassificationInvariantBroken("x - 1 must be the factor of coset {0}")
    selfrec, pairs = [], []
    seen = set()
    for fa in fd.factors:
        if fa.coset == (0,) or fa.poly in seen:
            continue
        rec = pmonic(F, poly_reciprocal(F, fa.poly))
        neg = tuple(sorted((-i) % n for i in fa.coset))
        if rec not in by_poly or by_poly[rec].coset != neg:
            raise ClassificationInvariantBroken(f"reciprocal of {fa.poly} is not a listed factor")
        if rec == fa.poly:
            if fa.degree % 2:
                raise ClassificationInvariantBroken("self-reciprocal factor of odd degree > 1")
            selfrec.append(fa)
            seen.add(fa.poly)
        else:
            a, b = sorted((fa, by_poly[rec]), key=lambda z: pmask(F, z.poly))
            pairs.append((a, b))
            seen.update((a.poly, b.poly))
    key = lambda fa: (fa.degree, pmask(F, fa.poly))
    selfrec.sort(key=key)
    pairs.sort(key=lambda ab: key(ab[0]))
    rho, eps = 1 + len(selfrec), len(pairs)

    ordered = [replace(one[0], kind=SELF_RECIPROCAL, partner=None, delta=1)]
    ordered += [replace(fa, kind=SELF_RECIPROCAL, partner=None, delta=1) for fa in selfrec]
    for i, (a, b) in enumerate(pairs):
        ordered.append(replace(a, kind=PAIR_FIRST, partner=rho + eps + i + 1, delta=a.poly[0]))
    for i, (a, b) in enumerate(pairs):
        ordered.append(replace(b, kind=PAIR_SECOND, partner=rho + i + 1, delta=b.poly[0]))

    for j, fa in enumerate(ordered, start=1):
        rec = poly_reciprocal(F, fa.poly)
        if fa.kind == SELF_RECIPROCAL:
            target = fa.poly
        else:
            target = ordered[fa.partner - 1].poly
        if rec != pscale(F, fa.delta, target):
            raise ClassificationInvariantBroken(f"reciprocal(f_{j}) != delta_{j} * partner")
    return replace(fd, factors=tuple(ordered), rho=rho, epsilon=eps, classified=True)


def idempotents(fd: FactorData, s: int) -> list[Poly]:
    """Primitive idempotents e_j of GF(2^m)[x]/(x^(2^s n) - 1), one per factor."""
    if s < 0:
        raise ValueError("s must be nonnegative")
    F, n = fd.field, fd.n
    N = (1 << s) * n
    xn1 = xn_minus_1(n)
    out = []
    for fa in fd.factors:
        cof, rem = pdivmod(F, xn1, fa.poly)
        assert not rem
        g, v, _w = poly_xgcd(F, cof, fa.poly)
        assert g == (1,)
        e = pmod_xn1(pmul(F, v, cof), N)
        for _ in range(s):
            e = pmul_xn1(F, e, e, N)
        out.append(e)
    return out


def factorize(F: GF2m, n: int, s: Optional[int] = None) -> FactorData:
    """Factor, classify, and (when s is given) attach the idempotents."""
    fd = classify_reciprocal(factor_xn_minus_1(F, n))
    if s is not None:
        fd = replace(fd, s=s, idempotents=tuple(idempotents(fd, s)))
    return fd


def factor_report(fd: FactorData) -> dict:
    from .gf import format_poly

    F = fd.field
    return {
        "m": F.m,
        "n": fd.n,
        "s": fd.s,
        "modulus": F.modulus,
        "factors": [
            {
                "poly": format_poly(F, fa.poly),
                "degree": fa.degree,
                "class": fa.kind,
                "partner": fa.partner,
                "delta": fa.delta,
                "coset": list(fa.coset),
            }
            for fa in fd.factors
        ],
        "rho": fd.rho,
        "epsilon": fd.epsilon,
        "idempotents": [format_poly(F, e) for e in fd.idempotents],
    }
