import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from carlitz import field_make, frobenius, binom_mod_p, ResidueCtx, Poly
from carlitz.ff import is_prime


def test_field_make_prime_fields():
    f3 = field_make(3)
    assert list(f3.elements()) == [0, 1, 2]
    assert field_make(2).order == 2


def test_field_make_rejects_bad_input():
    with pytest.raises(ValueError):
        field_make(4)  # not prime
    with pytest.raises(ValueError):
        field_make(3, 0)


def test_f9_modulus_is_lex_smallest():
    # exhaustive oracle over the 9 monic quadratics: first irreducible is x²+1
    f9 = field_make(3, 2)
    cands = []
    for c in range(9):
        a0, a1 = c % 3, c // 3 % 3
        has_root = any((x * x + a1 * x + a0) % 3 == 0 for x in range(3))
        cands.append(((a0, a1), not has_root))
    first = next(co for co, irr in cands if irr)
    assert first == (1, 0)
    assert f9.modulus == (1, 0, 1)


def test_frobenius_prime_field_fixed():
    f3 = field_make(3)
    assert frobenius(f3, 2, 5) == 2
    assert frobenius(f3, 0, 1) == 0


def test_frobenius_f9_conjugates_theta():
    f9 = field_make(3, 2)
    theta = 3  # digits (0, 1)
    assert frobenius(f9, theta, 1) == 6  # θ³ = -θ = 2θ
    assert frobenius(f9, theta, 2) == theta
    for x in f9.elements():
        assert f9.pow_(x, 9) == x


@pytest.mark.parametrize("j,i,p,want", [(3, 1, 3, 0), (8, 5, 3, 2), (5, 9, 3, 0)])
def test_binom_examples(j, i, p, want):
    assert binom_mod_p(j, i, p) == want


@pytest.mark.parametrize("p", [2, 3, 5])
def test_binom_against_integer_oracle(p):
    for j in range(31):
        for i in range(j + 1):
            assert binom_mod_p(j, i, p) == math.comb(j, i) % p


@pytest.mark.parametrize("q", [2, 3])
def test_binom_digit_identities(q):
    # C(l, q(i+1)-1) = 0 unless l ≡ -1 mod q, where it is C((l+1)/q - 1, i)
    for l in range(41):
        for i in range(13):
            got = binom_mod_p(l, q * (i + 1) - 1, q)
            if l % q != q - 1:
                assert got == 0
            else:
                assert got == binom_mod_p((l + 1) // q - 1, i, q)
    # C(aq, cq) = C(a, c)
    for a in range(12):
        for c in range(12):
            assert binom_mod_p(a * q, c * q, q) == binom_mod_p(a, c, q)


@settings(max_examples=60)
@given(st.integers(0, 8), st.integers(0, 8), st.integers(0, 8))
def test_f9_ring_axioms(a, b, c):
    f9 = field_make(3, 2)
    assert f9.add(a, b) == f9.add(b, a)
    assert f9.mul(a, b) == f9.mul(b, a)
    assert f9.mul(a, f9.add(b, c)) == f9.add(f9.mul(a, b), f9.mul(a, c))
    assert f9.mul(f9.mul(a, b), c) == f9.mul(a, f9.mul(b, c))


@settings(max_examples=40)
@given(st.integers(0, 8), st.integers(0, 8))
def test_frobenius_additive(a, b):
    f9 = field_make(3, 2)
    lhs = f9.pow_(f9.add(a, b), 3)
    rhs = f9.add(f9.pow_(a, 3), f9.pow_(b, 3))
    assert lhs == rhs


@pytest.mark.parametrize("q", [2, 3, 9])
def test_inverses(q):
    ctx = field_make(3, 2) if q == 9 else field_make(q)
    for x in ctx.elements():
        if x != ctx.zero:
            assert ctx.mul(x, ctx.inv(x)) == ctx.one
    with pytest.raises(ZeroDivisionError):
        ctx.inv(ctx.zero)


def test_residue_ctx_basics(f3):
    rc = ResidueCtx(f3, (1, 0, 1))  # θ²+1
    assert rc.order == 9
    th = rc.theta()
    assert rc.mul(th, th) == rc.neg(rc.one)  # θ² = -1
    assert rc.frobenius(th, 1) == rc.neg(th)
    assert rc.frobenius(th, 2) == th
    for x in rc.elements():
        if x != rc.zero:
            assert rc.mul(x, rc.inv(x)) == rc.one
        assert rc.frobenius(x, rc.d) == x


def test_residue_ctx_rejects_reducible(f3):
    with pytest.raises(ValueError):
        ResidueCtx(f3, (2, 0, 1))  # θ²-1 = (θ-1)(θ+1)


def test_residue_ctx_over_extension_field():
    f4 = field_make(2, 2)
    # find an irreducible quadratic over GF(4) and sanity-check the tower
    from carlitz.poly import irreducibles_of_degree
    prime = next(irreducibles_of_degree(f4, 2))
    rc = ResidueCtx(f4, prime.coeffs)
    assert rc.order == 16
    th = rc.theta()
    assert rc.frobenius(th, 2) == th  # x -> x^4 has order d = 2


def test_is_prime():
    assert [n for n in range(2, 30) if is_prime(n)] == \
        [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
