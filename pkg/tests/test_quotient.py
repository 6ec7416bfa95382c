import pytest
from hypothesis import given, strategies as st

from sdcyclic.errors import NotInSubfield, TraceUndefined, XNotInvertible
from sdcyclic.factor import factorize
from sdcyclic.gf import GF2m, padd, poly_from_mask
from sdcyclic.quotient import QuotRing, TraceCtx, fadic_expand, substitute_x_inverse, trace, trace_preimage

F2, F4 = GF2m(1), GF2m(2)
# (field, f) with f a self-reciprocal irreducible of even degree
EVEN = [(F2, (1, 1, 1)), (F2, (1, 1, 1, 1, 1)), (F2, (1, 0, 0, 1, 0, 0, 1)), (F4, (1, 2, 1))]
RINGS = [(F, f, k) for F, f in EVEN for k in (1, 2, 3)]


def elem(ring):
    return st.integers(0, ring.F.order ** ring.dim - 1).map(lambda v: poly_from_mask(ring.F, v))


@st.composite
def ring_and(draw, k=1):
    F, f, e = draw(st.sampled_from(RINGS))
    R = QuotRing(F, f, e)
    return R, [draw(elem(R)) for _ in range(k)]


@given(ring_and(1))
def test_fadic_roundtrip(rx):
    R, (a,) = rx
    digits = R.expand(a)
    assert len(digits) == R.k and all(len(b) <= R.d for b in digits)
    assert R.reassemble(digits) == a
    assert [e.value for e in fadic_expand(R.elem(a))] == digits


@given(ring_and(2))
def test_x_inverse_substitution_is_multiplicative(rx):
    R, (a, b) = rx
    sub = R.substitute_x_inverse
    assert sub(R.mul(a, b)) == R.mul(sub(a), sub(b))
    assert sub(padd(a, b)) == padd(sub(a), sub(b))
    assert substitute_x_inverse(R.elem(a)).value == sub(a)


@given(st.integers(0, 2 ** 12 - 1), st.integers(0, 2 ** 12 - 1))
def test_substitution_between_reciprocal_pair_is_multiplicative(u, v):
    # x -> x^-1 carries GF(2)[x]/(f^4) onto GF(2)[x]/(f~^4) for f~ the reciprocal of f
    Rj, Rp = QuotRing(F2, (1, 1, 0, 1), 4), QuotRing(F2, (1, 0, 1, 1), 4)
    a, b = poly_from_mask(F2, u), poly_from_mask(F2, v)
    sub = Rp.substitute_x_inverse
    assert sub(Rj.mul(a, b)) == Rp.mul(sub(a), sub(b))


@pytest.mark.parametrize("m, n, s", [(1, 3, 2), (1, 7, 3), (2, 5, 1), (1, 15, 2)])
def test_x_inverse_is_x_to_N_minus_1(m, n, s):
    fd = factorize(GF2m(m), n, s)
    N = (1 << s) * n
    for j in range(1, fd.r + 1):
        R = QuotRing(fd.field, fd[j].poly, 1 << s)
        assert R.x_inv == R.x_power(N - 1)
        assert R.mul(R.x_inv, (0, 1)) == (1,)


def test_x_not_invertible():
    with pytest.raises(XNotInvertible):
        QuotRing(F2, (0, 1), 2).x_inv


def test_digit_range():
    R = QuotRing(F2, (1, 1, 1), 4)
    assert R.digit_range(4, 4) == [()]
    rng = R.digit_range(1, 3)
    assert len(rng) == 16 and len(set(rng)) == 16
    for b in rng:
        d = R.expand(b)
        assert d[0] == () and d[3] == ()
    keys = [R.digit_key(b) for b in rng]
    assert keys[0] == (0, 0, 0, 0)


@pytest.mark.parametrize("F, f", EVEN)
def test_trace_linear_onto_subfield_with_equal_fibres(F, f):
    tc = TraceCtx(F, f)
    R = tc.ring
    Q = F.order ** tc.d
    assert len(tc.H) == tc.qp
    fibres = {}
    for v in range(Q):
        xi = poly_from_mask(F, v)
        t = tc.trace(xi)
        assert tc.in_subfield(t)
        fibres.setdefault(t, set()).add(xi)
    assert set(fibres) == set(tc.H)
    for h, fib in fibres.items():
        assert len(fib) == Q // tc.qp
        assert set(tc.preimage(h)) == fib
    # GF(2^m)-linearity
    for c in range(F.order):
        for v in (1, 2, 3):
            xi = poly_from_mask(F, v)
            cx = R.reduce(tuple(F.mul(c, t) for t in xi))
            assert tc.trace(cx) == R.reduce(tuple(F.mul(c, t) for t in tc.trace(xi)))


def test_trace_on_gf4():
    tc = TraceCtx(F2, (1, 1, 1))
    assert tc.H == [(), (1,)]
    assert trace(tc, (0, 1)) == (1,)
    assert trace_preimage(tc, ()) == [(), (1,)]
    assert tc.preimage((1,)) == [(0, 1), (1, 1)]


def test_trace_errors():
    with pytest.raises(TraceUndefined):
        TraceCtx(F2, (1, 1, 0, 1))
    with pytest.raises(NotInSubfield):
        TraceCtx(F2, (1, 1, 1)).preimage((0, 1))


def test_ring_inverse_and_negative_powers():
    R = QuotRing(F4, (1, 2, 1), 2)
    a = (1, 2, 0, 3)
    assert R.mul(a, R.inverse(a)) == (1,)
    assert R.mul(R.pow(a, -3), R.pow(a, 3)) == (1,)
    with pytest.raises(ZeroDivisionError):
        R.inverse(R.f)
