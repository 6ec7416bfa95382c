"""Enumeration of self-dual cyclic codes of length N = 2^s n over GF(2^m) + uGF(2^m).

A code is a direct sum over the factors f_j of x^n - 1 of one ideal C_j of
K_j + uK_j, K_j = GF(2^m)[x]/(f_j^{2^s}).  Ideals are listed per factor
("slot"): slot 0 is x + 1, then one slot for every self-reciprocal factor,
then one slot for every reciprocal pair, which fixes both members together.
A generator is a pair (a, b) standing for a + u*b.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterator, Optional

from .errors import ChoiceShapeMismatch, ClosedFormUnavailable
from .factor import FactorData, factorize
from .gf import GF2m, Poly, format_poly, pmul, pmul_xn1, ppow, pscale, psum
from .omega import omega_enumerate, solution_space
from .quotient import QuotRing


@dataclass(frozen=True)
class IdealSpec:
    j: int
    case: str
    params: tuple = ()          # sorted (name, value) pairs
    b: Poly = ()                # payload b(x), reduced in K_j
    gens: tuple = ()            # ((a, b), ...) in K_j
    partner: Optional[int] = None
    partner_gens: tuple = ()    # generators of C_{j+eps} in K_{j+eps}

    @property
    def param_dict(self) -> dict:
        return dict(self.params)

    def to_json(self, F: GF2m) -> dict:
        out = {"j": self.j, "case": self.case, "params": self.param_dict,
               "b_poly": format_poly(F, self.b)}
        if self.partner is not None:
            out["partner"] = self.partner
        return out


@dataclass
class CodeRecord:
    m: int
    s: int
    n: int
    index: int
    choices: tuple
    generators: tuple           # ((a, b), ...) mod x^N - 1
    fd: FactorData = field(repr=False, default=None)
    verified: str = "unchecked"  # unchecked | confirmed | failed

    @property
    def N(self) -> int:
        return (1 << self.s) * self.n

    @property
    def field(self) -> GF2m:
        return self.fd.field

    def to_json(self) -> dict:
        F = self.field
        return {
            "index": self.index,
            "choices": [c.to_json(F) for c in self.choices],
            "generators": [{"a_poly": format_poly(F, a), "b_poly": format_poly(F, b)}
                           for a, b in self.generators],
        }


def _red(ring: QuotRing, g):
    return tuple(ring.reduce(p) for p in g)


def _gens(ring: QuotRing, *pairs):
    return tuple(_red(ring, p) for p in pairs)


# -- Case I: the factor x + 1 ----------------------------------------------

def case1_spec(F: GF2m, s: int, case: str, b=(), h: int = 0) -> IdealSpec:
    """One Case I ideal; ``b`` is a field element for the a/c families and
    the coefficient vector (b_lo, ..., b_hi) for the b/d/e families."""
    S = 1 << s
    H = S // 2
    ring = QuotRing(F, (1, 1), S)
    y = (1, 1)

    def Y(e):
        return ppow(F, y, e)

    def ypoly(coeffs, lo):
        return psum(pscale(F, c, Y(lo + i)) for i, c in enumerate(coeffs) if c)

    def scalar(c):
        return (c,) if c else ()

    params = {"h": h} if case in ("I-s3-d", "I-s3-e") else {}
    if case in ("I-s1-a", "I-s2-a", "I-s3-a"):
        bp, pairs = (), [(Y(H), ())]
    elif case == "I-s1-b":
        bp = scalar(b)
        pairs = [(pmul(F, y, bp), (1,))]
    elif case == "I-s2-b":
        bp = ypoly(b, 1)
        pairs = [(pmul(F, y, bp), (1,))]
    elif case == "I-s2-c":
        bp = scalar(b)
        pairs = [(pmul(F, Y(2), bp), y), (Y(3), ())]
    elif case == "I-s3-b":
        bp = ypoly(b, H - 1)
        pairs = [(pmul(F, y, bp), (1,))]
    elif case == "I-s3-c":
        bp = scalar(b)
        pairs = [(pmul(F, Y(H), bp), Y(H - 1)), (Y(H + 1), ())]
    elif case == "I-s3-d":
        bp = ypoly(b, 2 * h - 1)
        pairs = [(pmul(F, Y(H - 2 * h + 1), bp), Y(H - 2 * h)), (Y(H + 2 * h), ())]
    elif case == "I-s3-e":
        bp = ypoly(b, 2 * h)
        pairs = [(pmul(F, Y(H - 2 * h), bp), Y(H - 2 * h - 1)), (Y(H + 2 * h + 1), ())]
    else:
        raise ValueError(f"unknown Case I tag {case!r}")
    return IdealSpec(j=1, case=case, params=tuple(sorted(params.items())),
                     b=ring.reduce(bp), gens=_gens(ring, *pairs))


def case1_ideals(F: GF2m, s: int) -> list[IdealSpec]:
    if s < 1:
        raise ValueError("s must be >= 1")
    S = 1 << s
    H = S // 2
    out = []
    if s == 1:
        out.append(case1_spec(F, s, "I-s1-a"))
        out += [case1_spec(F, s, "I-s1-b", c) for c in F.elements()]
        return out
    if s == 2:
        out.append(case1_spec(F, s, "I-s2-a"))
        out += [case1_spec(F, s, "I-s2-b", v) for v in product(F.elements(), repeat=2)]
        out += [case1_spec(F, s, "I-s2-c", c) for c in F.elements()]
        return out
    out.append(case1_spec(F, s, "I-s3-a"))
    out += [case1_spec(F, s, "I-s3-b", v) for v in solution_space(F, S - 1, H - 1).vectors()]
    out += [case1_spec(F, s, "I-s3-c", c) for c in F.elements()]
    for h in range(1, S // 4):
        out += [case1_spec(F, s, "I-s3-d", v, h)
                for v in solution_space(F, 4 * h - 1, 2 * h - 1).vectors()]
    for h in range(1, S // 4):
        for v in solution_space(F, 4 * h + 1, 2 * h).vectors():
            if v[0]:
                raise AssertionError("leading coordinate of the (4h+1, 2h) slice must vanish")
            out.append(case1_spec(F, s, "I-s3-e", v, h))
    return out


def case1_count(m: int, s: int) -> int:
    q = 1 << m
    if s == 1:
        return 1 + q
    if s == 2:
        return 1 + q + q * q
    return 1 + q + 2 * q * q * ((q ** (2 ** (s - 2) - 1) - 1) // (q - 1)) + q ** (2 ** (s - 2) + 1)


# -- Case II: self-reciprocal factors --------------------------------------

def case2_spec(fd: FactorData, j: int, s: int, case: str, beta: Poly = (), nu: int = 0) -> IdealSpec:
    """One Case II ideal with b = f^{nu-1} beta."""
    F = fd.field
    f = fd[j].poly
    S = 1 << s
    H = S // 2
    ring = QuotRing(F, f, S)

    def P(e):
        return ppow(F, f, e)

    if case == "II-1":
        params, b, pairs = {}, (), [(P(H), ())]
    elif case == "II-2":
        params, b = {"nu": H}, pmul(F, P(H - 1), beta)
        pairs = [(pmul(F, f, b), (1,))]
    elif case == "II-3":
        params, b = {"nu": nu}, pmul(F, P(nu - 1), beta)
        pairs = [(pmul(F, P(H - nu + 1), b), P(H - nu)), (P(H + nu), ())]
    else:
        raise ValueError(f"unknown Case II tag {case!r}")
    return IdealSpec(j=j, case=case, params=tuple(sorted(params.items())),
                     b=ring.reduce(b), gens=_gens(ring, *pairs))


def case2_ideals(fd: FactorData, j: int, s: int) -> list[IdealSpec]:
    H = 1 << (s - 1)
    out = [case2_spec(fd, j, s, "II-1")]
    out += [case2_spec(fd, j, s, "II-2", beta) for beta in omega_enumerate(fd, j, H).elements]
    for nu in range(1, H):
        out += [case2_spec(fd, j, s, "II-3", beta, nu)
                for beta in omega_enumerate(fd, j, nu).elements]
    return out


def case2_count(m: int, d: int, s: int) -> int:
    q = 1 << (m * d // 2)
    return 1 + sum(q ** nu for nu in range(1, (1 << (s - 1)) + 1))


# -- Case III: reciprocal pairs --------------------------------------------

def _half_up(v: int) -> int:
    return -(-v // 2)


def case3_payload_range(s: int, case: str, k: int = 0, t: int = 0) -> tuple[int, int]:
    """Digit range [lo, hi) of the payload b for a Case III subcase."""
    S = 1 << s
    if case == "III-1":
        return S // 2 - 1, S - 1
    if case == "III-2":
        return _half_up(S - k) - 1, S - k - 1
    if case == "III-3":
        return 0, 0
    if case in ("III-4", "III-5"):
        return _half_up(t) - 1, t - 1
    raise ValueError(f"unknown Case III tag {case!r}")


def case3_spec(fd: FactorData, j: int, s: int, case: str, b: Poly = (), k: int = 0, t: int = 0,
               partner_b: Optional[Poly] = None) -> IdealSpec:
    """One pair (C_j, C_{j+eps}); the partner is built from ``partner_b``
    when given (mutation testing), else from ``b``."""
    F = fd.field
    fa = fd[j]
    p = fa.partner
    fj, fp = fa.poly, fd[p].poly
    d, delta = fa.degree, fa.delta
    S = 1 << s
    Rj = QuotRing(F, fj, S)
    Rp = QuotRing(F, fp, S)

    def Pj(e):
        return ppow(F, fj, e)

    def Pp(e):
        return ppow(F, fp, e)

    src = b if partner_b is None else partner_b
    # delta_j x^{N - d} b(x^-1) in K_{j+eps}; x^N = 1 there
    B = pscale(F, delta, Rp.mul(Rp.x_power(-d), Rp.substitute_x_inverse(src)))
    if case == "III-1":
        params = {}
        gj = [(pmul(F, fj, b), (1,))]
        gp = [(pmul(F, fp, B), (1,))]
    elif case == "III-2":
        params = {"k": k}
        gj = [(pmul(F, Pj(k + 1), b), Pj(k))]
        gp = [(pmul(F, fp, B), (1,)), (Pp(S - k), ())]
    elif case == "III-3":
        params = {"k": k}
        gj = [(Pj(k), ())]
        gp = [(Pp(S - k), ())]
    elif case == "III-4":
        params = {"t": t}
        gj = [(pmul(F, fj, b), (1,)), (Pj(t), ())]
        gp = [(pmul(F, Pp(S - t + 1), B), Pp(S - t))]
    elif case == "III-5":
        params = {"k": k, "t": t}
        gj = [(pmul(F, Pj(k + 1), b), Pj(k)), (Pj(k + t), ())]
        gp = [(pmul(F, Pp(S - k - t + 1), B), Pp(S - k - t)), (Pp(S - k), ())]
    else:
        raise ValueError(f"unknown Case III tag {case!r}")
    return IdealSpec(j=j, case=case, params=tuple(sorted(params.items())), b=Rj.reduce(b),
                     gens=_gens(Rj, *gj), partner=p, partner_gens=_gens(Rp, *gp))


def case3_pairs(fd: FactorData, j: int, s: int) -> list[IdealSpec]:
    S = 1 << s
    Rj = QuotRing(fd.field, fd[j].poly, S)
    combos = [("III-1", 0, 0)]
    combos += [("III-2", k, 0) for k in range(1, S)]
    combos += [("III-3", k, 0) for k in range(0, S + 1)]
    combos += [("III-4", 0, t) for t in range(1, S)]
    combos += [("III-5", k, t) for k in range(1, S - 1) for t in range(1, S - k)]
    out = []
    for case, k, t in combos:
        lo, hi = case3_payload_range(s, case, k, t)
        out += [case3_spec(fd, j, s, case, b, k, t) for b in Rj.digit_range(lo, hi)]
    return out


def case3_count(m: int, d: int, s: int) -> int:
    H = 1 << (s - 1)
    return sum((1 + 4 * i) * (1 << ((H - i) * m * d)) for i in range(H + 1))


# -- closed form -----------------------------------------------------------

def count_closed_form(m: int, s: int, n: int, modulus: Optional[int] = None) -> int:
    if s < 2:
        raise ClosedFormUnavailable("no closed form for s = 1; enumerate instead")
    fd = factorize(GF2m(m, modulus), n)
    q = 1 << m
    selfrec = [fd[j].degree for j in fd.self_reciprocal_indices()]
    pairs = [fd[j].degree for j in fd.pair_indices()]
    if s == 2:
        total = 1 + q + q * q
        for d in selfrec:
            total *= 1 + (1 << (m * d // 2)) + (1 << (m * d))
        for d in pairs:
            total *= 9 + 5 * (1 << (m * d)) + (1 << (2 * m * d))
        return total
    H = 1 << (s - 1)
    total = 1 + q + 2 * q * q * ((q ** (2 ** (s - 2) - 1) - 1) // (q - 1)) + q ** (2 ** (s - 2) + 1)
    for d in selfrec:
        total *= 1 + sum((1 << (m * d // 2)) ** nu for nu in range(1, H + 1))
    for d in pairs:
        total *= sum((1 + 4 * i) * (1 << ((H - i) * m * d)) for i in range(H + 1))
    return total


# -- the full family -------------------------------------------------------

class CodeFamily:
    """All self-dual cyclic codes for one (m, s, n), indexed mixed-radix with
    the x + 1 slot most significant."""

    def __init__(self, m: int, s: int, n: int, modulus: Optional[int] = None, fd: FactorData = None):
        if s < 1:
            raise ValueError("s must be >= 1")
        self.m, self.s, self.n = m, s, n
        self.fd = fd if fd is not None else factorize(GF2m(m, modulus), n, s)
        self.F = self.fd.field
        self.N = (1 << s) * n
        self._egen: dict = {}

    @cached_property
    def slots(self) -> list[int]:
        fd = self.fd
        return [1] + list(fd.self_reciprocal_indices()) + list(fd.pair_indices())

    @cached_property
    def spec_lists(self) -> list[list[IdealSpec]]:
        fd, s = self.fd, self.s
        out = [case1_ideals(self.F, s)]
        out += [case2_ideals(fd, j, s) for j in fd.self_reciprocal_indices()]
        out += [case3_pairs(fd, j, s) for j in fd.pair_indices()]
        return out

    @property
    def radices(self) -> list[int]:
        return [len(L) for L in self.spec_lists]

    @property
    def total(self) -> int:
        return math.prod(self.radices)

    def decode(self, index: int) -> list[int]:
        if not 0 <= index < self.total:
            raise IndexError(f"index {index} outside 0..{self.total - 1}")
        digits = []
        for r in reversed(self.radices):
            index, d = divmod(index, r)
            digits.append(d)
        return digits[::-1]

    def encode(self, digits) -> int:
        idx = 0
        for d, r in zip(digits, self.radices):
            idx = idx * r + d
        return idx

    def _eg(self, j: int, g) -> tuple:
        key = (j, g)
        hit = self._egen.get(key)
        if hit is None:
            e = self.fd.idempotents[j - 1]
            hit = tuple(pmul_xn1(self.F, e, p, self.N) for p in g)
            self._egen[key] = hit
        return hit

    def assemble(self, choices, index: int = -1) -> CodeRecord:
        choices = tuple(choices)
        if len(choices) != len(self.slots) or any(c.j != j for c, j in zip(choices, self.slots)):
            raise ChoiceShapeMismatch(
                f"expected one spec for each of slots {self.slots}, got {[c.j for c in choices]}")
        gens = []
        for spec in choices:
            for g in spec.gens:
                eg = self._eg(spec.j, g)
                if eg != ((), ()):
                    gens.append(eg)
            for g in spec.partner_gens:
                eg = self._eg(spec.partner, g)
                if eg != ((), ()):
                    gens.append(eg)
        return CodeRecord(m=self.m, s=self.s, n=self.n, index=index, choices=choices,
                          generators=tuple(gens), fd=self.fd)

    def record_at(self, index: int) -> CodeRecord:
        digits = self.decode(index)
        return self.assemble([L[d] for L, d in zip(self.spec_lists, digits)], index)

    def iterate(self, start: int = 0, limit: Optional[int] = None) -> Iterator[CodeRecord]:
        stop = self.total if limit is None else min(self.total, start + limit)
        if start >= stop:
            return
        lists = self.spec_lists
        first = self.decode(start)
        # lexicographic walk beginning at ``first``
        digits = list(first)
        idx = start
        while idx < stop:
            yield self.assemble([L[d] for L, d in zip(lists, digits)], idx)
            idx += 1
            for pos in range(len(digits) - 1, -1, -1):
                digits[pos] += 1
                if digits[pos] < len(lists[pos]):
                    break
                digits[pos] = 0

    def __len__(self):
        return self.total

    def count_enumerated(self, walk_limit: int = 10 ** 6) -> int:
        """Size of the Cartesian product of the per-slot ideal lists; walked
        tuple by tuple when small enough."""
        total = self.total
        if total <= walk_limit:
            c = sum(1 for _ in product(*self.spec_lists))
            assert c == total
        return total


def iterate_all(m: int, s: int, n: int, limit: Optional[int] = None, start: int = 0,
                modulus: Optional[int] = None) -> Iterator[CodeRecord]:
    return CodeFamily(m, s, n, modulus).iterate(start, limit)


def assemble(family: CodeFamily, choices) -> CodeRecord:
    return family.assemble(choices)
