"""Single-payload mutations that move one ideal's parameter outside its
prescribed set, for negative testing of the verifier.

* x + 1 slot: replace the coefficient vector by one that violates M_l B = 0
  (only where that constraint is not vacuous).
* self-reciprocal slot: replace beta by an element of GF(2^m)[x]/(f^nu) outside Omega.
* reciprocal pair: build the partner ideal from a different payload than C_j,
  or give the payload a nonzero digit below its prescribed range.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .codes import CodeFamily, CodeRecord, case1_spec, case2_spec, case3_payload_range, case3_spec
from .gf import poly_from_mask
from .omega import kronecker_M, omega_membership, solution_space
from .quotient import QuotRing

_S_SHAPES = {
    # case -> (l, delta) as functions of (S, h)
    "I-s3-b": lambda S, h: (S - 1, S // 2 - 1),
    "I-s3-d": lambda S, h: (4 * h - 1, 2 * h - 1),
    "I-s3-e": lambda S, h: (4 * h + 1, 2 * h),
}


@dataclass
class Mutation:
    index: int
    slot: int
    case: str
    note: str
    record: CodeRecord


def _in_S(l: int, delta: int, vec) -> bool:
    B = np.zeros(l, dtype=np.int64)
    B[delta:] = vec
    M = kronecker_M(l)
    # M has 0/1 entries: M B over GF(2^m) is an XOR of selected entries
    out = np.bitwise_xor.reduce(np.where(M.astype(bool), B[None, :], 0), axis=1)
    return not out.any()


def _mutate_case1(fam: CodeFamily, spec, rng: random.Random):
    S = 1 << fam.s
    h = spec.param_dict.get("h", 0)
    l, delta = _S_SHAPES[spec.case](S, h)
    q = fam.F.order
    for _ in range(1000):
        vec = [rng.randrange(q) for _ in range(l - delta)]
        if not _in_S(l, delta, vec):
            return case1_spec(fam.F, fam.s, spec.case, tuple(vec), h), f"vector {vec} outside S"
    return None


def _mutate_case2(fam: CodeFamily, spec, rng: random.Random):
    nu = spec.param_dict["nu"]
    f = fam.fd[spec.j].poly
    ring = QuotRing(fam.F, f, nu)
    top = fam.F.order ** ring.dim
    for _ in range(1000):
        beta = poly_from_mask(fam.F, rng.randrange(top))
        if not omega_membership(fam.fd, spec.j, nu, beta):
            return case2_spec(fam.fd, spec.j, fam.s, spec.case, beta, nu), f"beta {beta} outside Omega"
    return None


def _mutate_case3(fam: CodeFamily, spec, rng: random.Random):
    p = spec.param_dict
    k, t = p.get("k", 0), p.get("t", 0)
    lo, hi = case3_payload_range(fam.s, spec.case, k, t)
    if hi - lo < 1:
        return None
    ring = QuotRing(fam.F, fam.fd[spec.j].poly, 1 << fam.s)
    q_d = fam.F.order ** ring.d
    if lo > 0 and rng.random() < 0.5:
        # a nonzero digit below the prescribed range, partner kept consistent
        digits = ring.expand(spec.b)
        i = rng.randrange(lo)
        digits[i] = poly_from_mask(fam.F, rng.randrange(1, q_d))
        b = ring.reassemble(digits)
        return case3_spec(fam.fd, spec.j, fam.s, spec.case, b, k, t), f"payload digit {i} set below range"
    for _ in range(1000):
        digits = [()] * lo + [poly_from_mask(fam.F, rng.randrange(q_d)) for _ in range(hi - lo)]
        other = ring.reassemble(digits)
        if other != spec.b:
            return (case3_spec(fam.fd, spec.j, fam.s, spec.case, spec.b, k, t, partner_b=other),
                    f"partner built from {other}")
    return None


def mutable_slots(fam: CodeFamily, record: CodeRecord) -> list[int]:
    out = []
    for slot, spec in enumerate(record.choices):
        if spec.case in _S_SHAPES:
            l, delta = _S_SHAPES[spec.case](1 << fam.s, spec.param_dict.get("h", 0))
            if solution_space(fam.F, l, delta).dim < l - delta:
                out.append(slot)
        elif spec.case in ("II-2", "II-3"):
            out.append(slot)
        elif spec.case.startswith("III-") and spec.case != "III-3":
            lo, hi = case3_payload_range(fam.s, spec.case, spec.param_dict.get("k", 0),
                                         spec.param_dict.get("t", 0))
            if hi > lo:
                out.append(slot)
    return out


def mutate(fam: CodeFamily, record: CodeRecord, rng: random.Random) -> Optional[Mutation]:
    slots = mutable_slots(fam, record)
    if not slots:
        return None
    slot = rng.choice(slots)
    spec = record.choices[slot]
    if spec.j == 1:
        res = _mutate_case1(fam, spec, rng)
    elif spec.partner is None:
        res = _mutate_case2(fam, spec, rng)
    else:
        res = _mutate_case3(fam, spec, rng)
    if res is None:
        return None
    new_spec, note = res
    choices = list(record.choices)
    choices[slot] = new_spec
    return Mutation(index=record.index, slot=slot, case=spec.case, note=note,
                    record=fam.assemble(choices, record.index))


def random_mutations(fam: CodeFamily, count: int, seed: int = 0, max_tries: int = 100000):
    """``count`` mutations of uniformly drawn records (records without a
    mutable payload are redrawn)."""
    rng = random.Random(seed)
    out = []
    tries = 0
    while len(out) < count and tries < max_tries:
        tries += 1
        rec = fam.record_at(rng.randrange(fam.total))
        mut = mutate(fam, rec, rng)
        if mut is not None:
            out.append(mut)
    return out
