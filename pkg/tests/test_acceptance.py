"""Acceptance gate.  Each test checks one criterion at its stated tolerance
and prints a single PASS/FAIL line; ``python tests/test_acceptance.py`` runs
the same checks without pytest."""

import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from omega_n3_fixtures import OMEGA_2, W_FIRST  # noqa: E402
from sdcyclic.codes import (  # noqa: E402
    CodeFamily, case1_ideals, case2_ideals, case3_count, case3_pairs, count_closed_form,
)
from sdcyclic.factor import factorize  # noqa: E402
from sdcyclic.gf import GF2m, pmask, pmod_xn1, pmul_xn1, psum  # noqa: E402
from sdcyclic.mutation import random_mutations  # noqa: E402
from sdcyclic.omega import omega_enumerate, omega_kernel_oracle, solution_space  # noqa: E402
from sdcyclic.verify import (  # noqa: E402
    gray_image_checks, is_self_dual, verify_self_dual, weight_distribution,
)

SWEEP = [(1, 2, 3), (1, 3, 3), (1, 2, 5), (1, 2, 7), (2, 2, 3)]
SWEEP_TOTALS = {(1, 2, 3): 49, (1, 3, 3): 589, (1, 2, 5): 147, (1, 2, 7): 791, (2, 2, 3): 945}
_FAM = {}


def fam(m, s, n):
    if (m, s, n) not in _FAM:
        _FAM[(m, s, n)] = CodeFamily(m, s, n)
    return _FAM[(m, s, n)]


def emit(num, title, ok, detail, out=print):
    out(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} :: {detail}")


# -- 1 ---------------------------------------------------------------------

COUNT_ROWS = [((2, 3), 49), ((2, 5), 147), ((3, 3), 589), ((2, 7), 791), ((2, 9), 3577),
              ((3, 5), 6479), ((2, 11), 7399), ((2, 15), 355005)]


def check_counts():
    notes, ok = [], True
    slowest = 0.0
    for (s, n), want in COUNT_ROWS:
        t = time.perf_counter()
        cf = count_closed_form(1, s, n)
        dt = time.perf_counter() - t
        slowest = max(slowest, dt)
        ok &= cf == want and dt < 1.0
        f = CodeFamily(1, s, n)
        if want <= 10 ** 5:
            t = time.perf_counter()
            walked = sum(1 for _ in f.iterate())
            dt_enum = time.perf_counter() - t
            ok &= walked == want
            if want == 589:
                ok &= dt_enum < 10.0
                notes.append(f"589 assembled in {dt_enum:.2f}s")
        else:
            ok &= f.count_enumerated() == want
        if cf != want:
            notes.append(f"(s={s},n={n}) closed form {cf} != {want}")
    notes.append(f"slowest closed form {slowest * 1000:.1f}ms")
    return ok, "; ".join(notes)


# -- 2 ---------------------------------------------------------------------

def check_n3_omega():
    fd = factorize(GF2m(1), 3)
    ok = True
    sizes = []
    for nu, want in OMEGA_2.items():
        om = omega_enumerate(fd, 2, nu)
        got = {tuple(pmask(fd.field, b) for b in om.ring.expand(e)) for e in om.elements}
        ok &= got == want
        sizes.append(len(om))
        if nu in W_FIRST:
            ok &= {pmask(fd.field, w) for w in om.wsets[()]} == W_FIRST[nu]
    return ok and sizes == [2, 4, 8, 16], f"sizes {sizes}, first W-sets for nu=2,4 checked"


# -- 3 ---------------------------------------------------------------------

def check_omega_law():
    checked, bad = 0, []
    for m in (1, 2):
        for n in (3, 5, 7, 9, 15):
            fd = factorize(GF2m(m), n)
            for j in fd.self_reciprocal_indices():
                d = fd[j].degree
                for nu in range(1, 5):  # nu <= 2^(s-1) for s <= 3
                    om = omega_enumerate(fd, j, nu)
                    ref = omega_kernel_oracle(fd, j, nu)
                    checked += 1
                    if len(om) != 2 ** (nu * m * d // 2) or om.elements != ref.elements:
                        bad.append((m, n, j, nu))
    return not bad, f"{checked} (m,n,j,nu) cases, mismatches {bad}"


# -- 4 ---------------------------------------------------------------------

def check_sweep():
    t = time.perf_counter()
    counts, failures = {}, 0
    for p in SWEEP:
        f = fam(*p)
        c = 0
        for rec in f.iterate():
            c += 1
            if not is_self_dual(rec):
                failures += 1
        counts[p] = c
    dt = time.perf_counter() - t
    ok = counts == SWEEP_TOTALS and failures == 0 and dt < 300
    return ok, f"counts {list(counts.values())}, failures {failures}, {dt:.1f}s"


# -- 5 ---------------------------------------------------------------------

def check_gray():
    viol = 0
    total = 0
    for p in SWEEP:
        for rec in fam(*p).iterate():
            total += 1
            try:
                gray_image_checks(rec, verify_self_dual(rec))
            except Exception:
                viol += 1
    sums = set()
    for rec in fam(1, 2, 3).iterate():
        try:
            sums.add(sum(weight_distribution(rec).values()))
        except Exception:
            sums.add(None)
    ok = viol == 0 and sums == {4096}
    return ok, f"{total} Gray images checked, violations {viol}; Lee = Hamming on 49 codes, sums {sorted(sums, key=str)}"


# -- 6 ---------------------------------------------------------------------

def check_structure():
    F1 = GF2m(1)
    parts = {
        "case1(1,3)=19": len(case1_ideals(F1, 3)) == 19,
        "case2(1,3,j=2,3)=31": len(case2_ideals(factorize(F1, 3), 2, 3)) == 31,
        "pairs(1,3,2)=113": case3_count(1, 3, 2) == 113 == len(case3_pairs(factorize(F1, 7), 2, 2)),
    }
    for m in (1, 2):
        F = GF2m(m)
        q = 2 ** m
        for s in (3, 4):
            S = 2 ** s
            parts[f"S top m={m} s={s}"] = len(solution_space(F, S - 1, S // 2 - 1)) == q ** (2 ** (s - 2) + 1)
            for h in range(1, 2 ** (s - 2)):
                parts[f"S(4h-1) m={m} s={s} h={h}"] = len(solution_space(F, 4 * h - 1, 2 * h - 1)) == q ** (h + 1)
                parts[f"S(4h+1) m={m} s={s} h={h}"] = len(solution_space(F, 4 * h + 1, 2 * h)) == q ** (h + 1)
    bad = [k for k, v in parts.items() if not v]
    return not bad, f"{len(parts)} subtotals, failing {bad}"


# -- 7 ---------------------------------------------------------------------

def check_idempotents():
    fd = factorize(GF2m(1), 3, 3)
    e1 = (1,) + (0,) * 7 + (1,) + (0,) * 7 + (1,)
    e2 = (0,) * 8 + (1,) + (0,) * 7 + (1,)
    ok = tuple(fd.idempotents) == (e1, e2)
    grid = 0
    for m in (1, 2):
        for n in (1, 3, 5, 7, 9, 15):
            for s in (1, 2, 3):
                fdx = factorize(GF2m(m), n, s)
                F, N = fdx.field, (1 << s) * n
                es = fdx.idempotents
                ok &= psum(es) == (1,)
                ok &= all(pmul_xn1(F, e, e, N) == pmod_xn1(e, N) for e in es)
                ok &= all(not pmul_xn1(F, a, b, N) for i, a in enumerate(es) for b in es[i + 1:])
                grid += 1
    return ok, f"fixture n=3 s=3 and identities on {grid} (m,n,s) triples"


# -- 8 ---------------------------------------------------------------------

MUTATION_POINTS = [(1, 1, 3)] + SWEEP


def check_mutations():
    per_point, accepted = {}, 0
    for p in MUTATION_POINTS:
        muts = random_mutations(fam(*p), 50, seed=7 + sum(p))
        per_point[p] = len(muts)
        accepted += sum(is_self_dual(mu.record) for mu in muts)
    ok = accepted == 0 and all(v >= 50 for v in per_point.values())
    return ok, f"mutations per point {list(per_point.values())}, false accepts {accepted}"


CRITERIA = [
    (1, "counts by closed form and enumeration", check_counts),
    (2, "Omega_{2,nu} fixtures for n=3", check_n3_omega),
    (3, "Omega cardinality law and kernel oracle", check_omega_law),
    (4, "self-duality sweep", check_sweep),
    (5, "Gray image properties", check_gray),
    (6, "structural subtotals", check_structure),
    (7, "idempotents", check_idempotents),
    (8, "mutation negativity", check_mutations),
]


@pytest.mark.parametrize("num, title, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, title, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        emit(num, title, ok, detail, out=lambda s: print("\n" + s))
    assert ok, detail


if __name__ == "__main__":
    results = []
    for num, title, fn in CRITERIA:
        ok, detail = fn()
        emit(num, title, ok, detail)
        results.append(ok)
    sys.exit(0 if all(results) else 1)
