import numpy as np
import pytest

from conftest import family
from sdcyclic.codes import (
    CodeFamily, case1_count, case1_ideals, case2_count, case2_ideals, case3_count, case3_pairs,
    count_closed_form, iterate_all,
)
from sdcyclic.errors import ChoiceShapeMismatch, ClosedFormUnavailable
from sdcyclic.factor import factorize
from sdcyclic.gf import GF2m, pmod, ppow
from sdcyclic.verify import case2_payload_condition, span_basis

# counts for m = 1; each value recomputed by hand from the factor profile
TABLE = {
    (2, 3): 49, (2, 5): 147, (3, 3): 589, (2, 7): 791, (2, 9): 3577, (3, 5): 6479,
    (2, 11): 7399, (2, 15): 355005, (3, 7): 139707, (4, 3): 46501,
    (2, 21): 7 * 7 * (9 + 5 * 2 ** 3 + 4 ** 3) * (9 + 5 * 2 ** 6 + 4 ** 6),
}


@pytest.mark.parametrize("s, n", sorted(TABLE))
def test_closed_form_table(s, n):
    assert count_closed_form(1, s, n) == TABLE[(s, n)]


def test_n21_value():
    assert TABLE[(2, 21)] == 24501225


@pytest.mark.parametrize("m, s, n", [(1, 2, 3), (1, 3, 3), (1, 2, 5), (1, 2, 7), (2, 2, 3), (1, 4, 3),
                                     (1, 2, 9), (2, 3, 3), (2, 2, 5), (1, 3, 7), (3, 2, 7)])
def test_closed_form_equals_enumeration(m, s, n):
    fam = CodeFamily(m, s, n)
    assert fam.count_enumerated() == count_closed_form(m, s, n)


def test_s1_has_no_closed_form():
    with pytest.raises(ClosedFormUnavailable):
        count_closed_form(1, 1, 3)
    assert CodeFamily(1, 1, 1).total == 3
    assert [r.choices[0].case for r in iterate_all(1, 1, 1)] == ["I-s1-a", "I-s1-b", "I-s1-b"]


@pytest.mark.parametrize("m, s", [(m, s) for m in (1, 2, 3) for s in (1, 2, 3, 4) if m * s < 12])
def test_case1_subtotal(m, s):
    assert len(case1_ideals(GF2m(m), s)) == case1_count(m, s)


def test_structural_subtotals():
    assert case1_count(1, 3) == len(case1_ideals(GF2m(1), 3)) == 19
    assert len(case2_ideals(factorize(GF2m(1), 3), 2, 3)) == case2_count(1, 2, 3) == 31
    fd7 = factorize(GF2m(1), 7)
    assert len(case3_pairs(fd7, 2, 2)) == case3_count(1, 3, 2) == 113
    assert case3_count(1, 3, 3) == 17 + 13 * 8 + 9 * 64 + 5 * 512 + 4096 == 7353


@pytest.mark.parametrize("m, n, s", [(1, 5, 3), (1, 9, 2), (2, 5, 2), (1, 15, 2)])
def test_case2_subtotals_and_payload_condition(m, n, s):
    fd = factorize(GF2m(m), n, s)
    for j in fd.self_reciprocal_indices():
        specs = case2_ideals(fd, j, s)
        assert len(specs) == case2_count(m, fd[j].degree, s)
        assert all(case2_payload_condition(fd, sp, s) for sp in specs)


@pytest.mark.parametrize("m, n, s", [(1, 7, 3), (2, 3, 2), (1, 15, 2)])
def test_case3_subtotals(m, n, s):
    fd = factorize(GF2m(m), n, s)
    for j in fd.pair_indices():
        assert len(case3_pairs(fd, j, s)) == case3_count(m, fd[j].degree, s)


def test_decode_encode_and_resume():
    fam = family(1, 2, 7)
    for i in (0, 1, 112, 500, fam.total - 1):
        assert fam.encode(fam.decode(i)) == i
        assert fam.record_at(i).to_json() == next(fam.iterate(i, 1)).to_json()
    full = [r.to_json() for r in fam.iterate()]
    parts = [r.to_json() for a in range(0, fam.total, 97) for r in fam.iterate(a, 97)]
    assert full == parts
    assert [r["index"] for r in full] == list(range(fam.total))
    with pytest.raises(IndexError):
        fam.decode(fam.total)


def test_first_and_last_records():
    fam = family(1, 3, 3)
    first = fam.record_at(0)
    assert [c.case for c in first.choices] == ["I-s3-a", "II-1"]
    F, N = fam.F, fam.N
    e1, e2 = fam.fd.idempotents
    xN1 = (1,) + (0,) * (N - 1) + (1,)

    def mul(a, b):
        return pmod(F, tuple(int(c) for c in np.convolve(a, b) % 2), xN1)

    assert first.generators == ((mul(e1, ppow(F, (1, 1), 4)), ()), (mul(e2, ppow(F, (1, 1, 1), 4)), ()))
    assert [c.case for c in fam.record_at(fam.total - 1).choices][1] == "II-3"


def test_n1_single_factor():
    fam = CodeFamily(2, 2, 1)
    assert fam.fd.idempotents == ((1,),)
    for rec in fam.iterate():
        gens = [g for c in rec.choices for g in c.gens if g != ((), ())]
        assert list(rec.generators) == gens


@pytest.mark.parametrize("m, s, n", [(1, 2, 7), (1, 3, 3), (2, 2, 3)])
def test_crt_round_trip(m, s, n):
    fam = family(m, s, n)
    F, S = fam.F, 1 << s
    for idx in range(0, fam.total, max(1, fam.total // 40)):
        rec = fam.record_at(idx)
        for spec in rec.choices:
            for j, gens in ((spec.j, spec.gens), (spec.partner, spec.partner_gens)):
                if j is None:
                    continue
                mod = ppow(F, fam.fd[j].poly, S)
                for g in gens:
                    eg = tuple(pmod(F, p, mod) for p in fam._eg(j, g))
                    assert eg == tuple(pmod(F, p, mod) for p in g)


def test_shape_mismatch():
    fam = family(1, 2, 7)
    rec = fam.record_at(3)
    with pytest.raises(ChoiceShapeMismatch):
        fam.assemble(rec.choices[:-1])
    with pytest.raises(ChoiceShapeMismatch):
        fam.assemble(rec.choices[::-1])


def _fingerprint(rec):
    sb = span_basis(rec)
    return sb.rows.tobytes()


@pytest.mark.parametrize("m, s, n", [(1, 2, 3), (1, 3, 3), (2, 2, 3), (1, 1, 7), (1, 2, 5)])
def test_no_duplicate_codes(m, s, n):
    fam = family(m, s, n)
    prints = {_fingerprint(r) for r in fam.iterate()}
    assert len(prints) == fam.total


def test_record_json_shape():
    rec = family(1, 2, 7).record_at(123)
    js = rec.to_json()
    assert set(js) == {"index", "choices", "generators"}
    assert all(set(c) >= {"j", "case", "params", "b_poly"} for c in js["choices"])
    assert js["choices"][1]["partner"] == 3
    assert all(set(g) == {"a_poly", "b_poly"} for g in js["generators"])
