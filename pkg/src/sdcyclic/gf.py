"""Arithmetic in GF(2^m) and in dense polynomials over it.

Field elements are ints below 2^m whose bits are the coefficients of the power
basis (bit i <-> alpha^i).  Polynomials are tuples of field elements, index i
holding the coefficient of x^i, with no trailing zeros; ``()`` is the zero
polynomial.
"""

from __future__ import annotations

import math
import re
from typing import Iterable, Sequence

from .errors import (
    ModulusNotIrreducible,
    PolyParseError,
    UnsupportedDegree,
    ZeroConstantTerm,
    ZeroGcd,
)

Poly = tuple  # tuple[int, ...]

MAX_DEGREE = 16

# Lexicographically least irreducible with nonzero constant term, per degree.
LEAST_IRREDUCIBLE = {
    1: 0x3, 2: 0x7, 3: 0xB, 4: 0x13, 5: 0x25, 6: 0x43, 7: 0x83, 8: 0x11B,
    9: 0x203, 10: 0x409, 11: 0x805, 12: 0x1009, 13: 0x201B, 14: 0x4021,
    15: 0x8003, 16: 0x1002B,
}

_TABLE_LIMIT = 8


# -- GF(2)[x] helpers on int bitmasks (used to vet the modulus) -----------

def _bdeg(a: int) -> int:
    return a.bit_length() - 1


def _bmod(a: int, b: int) -> int:
    db = _bdeg(b)
    while a and _bdeg(a) >= db:
        a ^= b << (_bdeg(a) - db)
    return a


def _bgcd(a: int, b: int) -> int:
    while b:
        a, b = b, _bmod(a, b)
    return a


def _bmulmod(a: int, b: int, f: int) -> int:
    df = _bdeg(f)
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if (a >> df) & 1:
            a ^= f
    return r


def is_irreducible_gf2(f: int) -> bool:
    """Ben-Or test: gcd(x^(2^i) - x, f) = 1 for 1 <= i <= deg(f)/2."""
    d = _bdeg(f)
    if d < 1:
        return False
    if d == 1:
        return True
    if not f & 1:
        return False
    p = 2
    for _ in range(d // 2):
        p = _bmulmod(p, p, f)
        if _bgcd(p ^ 2, f) != 1:
            return False
    return True


class GF2m:
    """The field GF(2^m) for 1 <= m <= 16.

    >>> F = GF2m(2)
    >>> F.mul(2, 2)
    3
    """

    def __init__(self, m: int, modulus: int | None = None):
        if not isinstance(m, int) or not 1 <= m <= MAX_DEGREE:
            raise UnsupportedDegree(f"extension degree m={m!r} outside 1..{MAX_DEGREE}")
        if modulus is None:
            modulus = LEAST_IRREDUCIBLE[m]
        if _bdeg(modulus) != m:
            raise ModulusNotIrreducible(f"modulus {modulus:#x} does not have degree {m}")
        if not is_irreducible_gf2(modulus) or not modulus & 1:
            raise ModulusNotIrreducible(f"modulus {modulus:#x} is reducible over GF(2)")
        self.m = m
        self.modulus = modulus
        self.order = 1 << m
        self._exp = None
        self._log = None
        if m <= _TABLE_LIMIT:
            self._build_tables()

    def __repr__(self):
        return f"GF2m(m={self.m}, modulus={self.modulus:#x})"

    def __eq__(self, other):
        return isinstance(other, GF2m) and (self.m, self.modulus) == (other.m, other.modulus)

    def __hash__(self):
        return hash((self.m, self.modulus))

    def __getstate__(self):
        return {"m": self.m, "modulus": self.modulus}

    def __setstate__(self, state):
        self.__init__(state["m"], state["modulus"])

    # carry-less multiply followed by reduction
    def _clmul(self, a: int, b: int) -> int:
        m, f = self.m, self.modulus
        r = 0
        while b:
            if b & 1:
                r ^= a
            b >>= 1
            a <<= 1
            if (a >> m) & 1:
                a ^= f
        return r

    def _build_tables(self):
        q1 = self.order - 1
        if q1 == 1:
            self._exp = [1, 1]
            self._log = [0, 0]
            return
        for g in range(2, self.order):
            exp = [0] * (2 * q1)
            log = [0] * self.order
            v = 1
            ok = True
            for i in range(q1):
                if i and v == 1:
                    ok = False
                    break
                exp[i] = v
                log[v] = i
                v = self._clmul(v, g)
            if ok:
                exp[q1:] = exp[:q1]
                self._exp, self._log = exp, log
                return
        raise AssertionError("no generator found")  # unreachable for a field

    @property
    def has_tables(self) -> bool:
        return self._exp is not None

    def elements(self) -> range:
        return range(self.order)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return self._clmul(a, b)

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if not a:
            raise ZeroDivisionError("0 has no inverse in GF(2^m)")
        if self._exp is not None:
            return self._exp[(self.order - 1 - self._log[a]) % (self.order - 1)]
        return self.pow(a, self.order - 2)

    def frobenius(self, a: int) -> int:
        return self.sqr(a)


def field_new(m: int, modulus: int | None = None) -> GF2m:
    return GF2m(m, modulus)


# -- polynomials over GF(2^m) ---------------------------------------------

def pnorm(coeffs: Iterable[int]) -> Poly:
    c = list(coeffs)
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def pdeg(a: Poly):
    """Degree of ``a``; ``-inf`` for the zero polynomial."""
    return len(a) - 1 if a else -math.inf


def monomial(k: int, c: int = 1) -> Poly:
    return (0,) * k + (c,) if c else ()


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    out = list(a)
    for i, c in enumerate(b):
        out[i] ^= c
    return pnorm(out)


def psum(polys: Iterable[Poly]) -> Poly:
    out: list[int] = []
    for p in polys:
        if len(p) > len(out):
            out.extend([0] * (len(p) - len(out)))
        for i, c in enumerate(p):
            out[i] ^= c
    return pnorm(out)


def pscale(F: GF2m, c: int, a: Poly) -> Poly:
    if not c:
        return ()
    if c == 1:
        return a
    mul = F.mul
    return tuple(mul(c, x) for x in a)


def pshift(a: Poly, k: int) -> Poly:
    """Multiply by x^k."""
    return (0,) * k + a if a else ()


def pmul(F: GF2m, a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) < len(b):
        a, b = b, a
    res = [0] * (len(a) + len(b) - 1)
    if F._exp is not None:
        exp, log = F._exp, F._log
        la = [(i, log[c]) for i, c in enumerate(a) if c]
        for j, bj in enumerate(b):
            if bj:
                lb = log[bj]
                for i, lai in la:
                    res[i + j] ^= exp[lai + lb]
    else:
        mul = F.mul
        for j, bj in enumerate(b):
            if bj:
                for i, ai in enumerate(a):
                    if ai:
                        res[i + j] ^= mul(ai, bj)
    return pnorm(res)


def pdivmod(F: GF2m, a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    db = len(b) - 1
    if len(a) - 1 < db:
        return (), a
    r = list(a)
    q = [0] * (len(a) - db)
    inv_lead = F.inv(b[-1])
    mul = F.mul
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k]
        if not c:
            continue
        c = mul(c, inv_lead)
        q[k - db] = c
        off = k - db
        for i, bi in enumerate(b):
            if bi:
                r[off + i] ^= mul(c, bi)
    return pnorm(q), pnorm(r[:db])


def pmod(F: GF2m, a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        return a
    return pdivmod(F, a, b)[1]


def pmonic(F: GF2m, a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    return pscale(F, F.inv(a[-1]), a)


def pgcd(F: GF2m, a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def poly_xgcd(F: GF2m, a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, v, w)`` with g = gcd(a, b) monic and v*a + w*b = g."""
    if not a and not b:
        raise ZeroGcd("gcd(0, 0) is undefined")
    r0, r1 = a, b
    v0, v1 = (1,), ()
    w0, w1 = (), (1,)
    while r1:
        q, r = pdivmod(F, r0, r1)
        r0, r1 = r1, r
        v0, v1 = v1, padd(v0, pmul(F, q, v1))
        w0, w1 = w1, padd(w0, pmul(F, q, w1))
    c = F.inv(r0[-1])
    return pscale(F, c, r0), pscale(F, c, v0), pscale(F, c, w0)


def pinvmod(F: GF2m, a: Poly, mod: Poly) -> Poly:
    g, v, _ = poly_xgcd(F, pmod(F, a, mod), mod)
    if g != (1,):
        raise ZeroDivisionError("polynomial is not invertible modulo the given modulus")
    return pmod(F, v, mod)


def pmulmod(F: GF2m, a: Poly, b: Poly, mod: Poly) -> Poly:
    return pmod(F, pmul(F, a, b), mod)


def ppowmod(F: GF2m, a: Poly, e: int, mod: Poly) -> Poly:
    r: Poly = pmod(F, (1,), mod)
    a = pmod(F, a, mod)
    while e:
        if e & 1:
            r = pmulmod(F, r, a, mod)
        e >>= 1
        if e:
            a = pmulmod(F, a, a, mod)
    return r


def ppow(F: GF2m, a: Poly, e: int) -> Poly:
    r: Poly = (1,)
    while e:
        if e & 1:
            r = pmul(F, r, a)
        e >>= 1
        if e:
            a = pmul(F, a, a)
    return r


def pmod_xn1(a: Poly, n: int) -> Poly:
    """Reduce modulo x^n - 1 by folding exponents."""
    if len(a) <= n:
        return a
    out = list(a[:n])
    for i in range(n, len(a)):
        out[i % n] ^= a[i]
    return pnorm(out)


def pmul_xn1(F: GF2m, a: Poly, b: Poly, n: int) -> Poly:
    return pmod_xn1(pmul(F, a, b), n)


def peval(F: GF2m, a: Poly, x: int) -> int:
    r = 0
    for c in reversed(a):
        r = F.mul(r, x) ^ c
    return r


def poly_reciprocal(F: GF2m, f: Poly) -> Poly:
    """x^deg(f) * f(1/x), i.e. the coefficient reversal of f."""
    if not f or not f[0]:
        raise ZeroConstantTerm("reciprocal needs a nonzero constant term")
    return tuple(reversed(f))


def pmask(F: GF2m, a: Poly) -> int:
    """Pack coefficients into one int, m bits per coefficient (x^0 lowest)."""
    m = F.m
    r = 0
    for i, c in enumerate(a):
        r |= c << (m * i)
    return r


def poly_from_mask(F: GF2m, mask: int) -> Poly:
    m, lim = F.m, F.order - 1
    out = []
    while mask:
        out.append(mask & lim)
        mask >>= m
    return tuple(out)


def poly_from_bits(bits: int) -> Poly:
    """Binary polynomial from an int bitmask (coefficients 0/1)."""
    return tuple((bits >> i) & 1 for i in range(bits.bit_length()))


# -- text form -----------------------------------------------------------
#
#   poly  := "0" | term ("+" term)*
#   term  := [coef "*"] "x" ["^" k] | coef
#   coef  := hex digits (the element mask)
#
# Coefficients equal to 1 are omitted on non-constant terms ("3*x^2+x+2").

def format_poly(F: GF2m, a: Poly, ascending: bool = False) -> str:
    if not a:
        return "0"
    terms = []
    idx = range(len(a)) if ascending else range(len(a) - 1, -1, -1)
    for i in idx:
        c = a[i]
        if not c:
            continue
        coef = format(c, "x")
        if i == 0:
            terms.append(coef)
            continue
        mono = "x" if i == 1 else f"x^{i}"
        if c == 1:
            terms.append(mono)
        else:
            terms.append(f"{coef}*{mono}")
    return "+".join(terms)


_TERM = re.compile(r"^(?:([0-9a-fA-F]+)\*)?x(?:\^(\d+))?$|^([0-9a-fA-F]+)$")


def parse_poly(F: GF2m, text: str) -> Poly:
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ()
    out: dict[int, int] = {}
    for term in s.split("+"):
        mt = _TERM.match(term)
        if not mt:
            raise PolyParseError(f"bad term {term!r} in {text!r}")
        if mt.group(3) is not None:
            c, k = int(mt.group(3), 16), 0
        else:
            c = int(mt.group(1), 16) if mt.group(1) else 1
            k = int(mt.group(2)) if mt.group(2) else 1
        if c >= F.order:
            raise PolyParseError(f"coefficient {c:#x} outside GF(2^{F.m})")
        out[k] = out.get(k, 0) ^ c
    top = max(out) if out else -1
    return pnorm(out.get(i, 0) for i in range(top + 1))


def as_poly(F: GF2m, value) -> Poly:
    """Accept a Poly, a sequence of coefficients, or the text form."""
    if isinstance(value, str):
        return parse_poly(F, value)
    if isinstance(value, Sequence):
        return pnorm(value)
    raise TypeError(f"cannot interpret {value!r} as a polynomial")
