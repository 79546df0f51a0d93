import pytest

from carlitz import field_make, Poly, LFun, TwistedPower, l_function
from carlitz.euler import (reduce_tau, twisted_power, local_factor,
                           truncated_product, primes_of_degree,
                           distinct_prime_factors, residue_ctx)


def tp3(coeffs, n=1):
    return TwistedPower(Poly(field_make(3), coeffs), n)


def test_reduce_tau_examples(f3):
    r = reduce_tau(tp3([1]), Poly(f3, [0, 1]))
    assert [c[0] for c in r.coeffs] == [0, 1]  # T
    r = reduce_tau(tp3([1]), Poly(f3, [1, 1]))
    assert [c[0] for c in r.coeffs] == [1, 1]  # T + 1
    r = reduce_tau(tp3([0, 1], n=2), Poly(f3, [1, 1]))
    assert [c[0] for c in r.coeffs] == [2, 1, 2]  # 2(T-2)²


def test_reduce_tau_rejects_reducible(f3):
    with pytest.raises(ValueError):
        reduce_tau(tp3([1]), Poly(f3, [2, 0, 1]))
    with pytest.raises(ValueError):
        reduce_tau(tp3([1]), Poly(f3, [0, 2]))  # not monic


def test_twisted_power_identity_and_quadratic(f3):
    rc = residue_ctx(Poly(f3, [1, 0, 1]))
    lin = Poly(rc, [rc.neg(rc.theta()), rc.one])
    assert twisted_power(lin, 1) == lin
    prod = twisted_power(lin, 2)
    assert [c[0] for c in prod.coeffs] == [1, 0, 1]  # T² + 1
    assert all(c[1] == f3.zero for c in prod.coeffs)


def test_twisted_power_gives_minimal_polynomial(f3):
    # product over the Frobenius orbit of θ̄ recovers the prime itself
    one = tp3([1])
    for d in range(1, 5):
        for prime in primes_of_degree(f3, d):
            assert local_factor(one, prime).npoly == prime


def test_local_factor_examples(f3):
    assert local_factor(tp3([1]), Poly(f3, [0, 1])).npoly == Poly(f3, [0, 1])
    assert local_factor(tp3([0, 1]), Poly(f3, [0, 1])).npoly.is_zero()
    lf = local_factor(tp3([1]), Poly(f3, [1, 0, 1]))
    assert lf.d == 2 and lf.npoly == Poly(f3, [1, 0, 1])
    inv = lf.inverse_factor()
    assert inv.u_degree == 2 and inv.coeff(1).is_zero()


def test_local_factor_degree_invariant(rng):
    for q in (2, 3):
        ctx = field_make(q)
        for _ in range(10):
            m = rng.randrange(0, 5)
            coeffs = [rng.randrange(q) for _ in range(m)] + [rng.randrange(1, q)]
            n = rng.randrange(1, 3)
            t = TwistedPower(Poly(ctx, coeffs), n)
            for d in (1, 2):
                for prime in primes_of_degree(ctx, d):
                    lf = local_factor(t, prime)
                    if (t.P % prime).is_zero():
                        assert lf.npoly.is_zero()
                    else:
                        assert lf.npoly.degree == n * d


def test_truncated_product_examples(f3):
    assert truncated_product(tp3([1]), 3) == LFun.one(f3)
    got = truncated_product(tp3([0, 2, 0, 2]), 3)
    assert got == LFun(f3, [Poly(f3, [1]), Poly(f3, [1]), Poly(f3, [1])])
    t = tp3([2, 1, 0, 1], n=2)
    assert truncated_product(t, t.k_min) == l_function(t)
    with pytest.raises(ValueError):
        truncated_product(tp3([1]), 0)


def test_oracle_agreement_random(rng):
    for q in (2, 3):
        ctx = field_make(q)
        for _ in range(25):
            m = rng.randrange(0, 8)
            coeffs = [rng.randrange(q) for _ in range(m)] + [rng.randrange(1, q)]
            n = rng.randrange(1, 3)
            t = TwistedPower(Poly(ctx, coeffs), n)
            l = l_function(t)
            assert truncated_product(t, 3) == l.truncate(3)
            if t.k_min <= 5:
                assert truncated_product(t, t.k_min) == l


def test_same_class_same_factors(rng):
    # P2 = P1 * P^(q-1): local factors agree at primes not dividing P
    f3 = field_make(3)
    for _ in range(10):
        m = rng.randrange(0, 4)
        p1 = Poly(f3, [rng.randrange(3) for _ in range(m)] + [rng.randrange(1, 3)])
        pm = Poly(f3, [rng.randrange(3) for _ in range(rng.randrange(0, 3))]
                  + [rng.randrange(1, 3)])
        p2 = p1 * pm * pm
        for d in (1, 2):
            for prime in primes_of_degree(f3, d):
                if (pm % prime).is_zero():
                    continue
                assert local_factor(TwistedPower(p1, 1), prime).npoly == \
                    local_factor(TwistedPower(p2, 1), prime).npoly


def test_l_quotient_for_twist_multipliers(rng):
    # L(C_{P Q^{q-1}}) = L(C_P) * prod of reciprocal factors at primes of Q
    f3 = field_make(3)
    for _ in range(10):
        p = Poly(f3, [rng.randrange(3) for _ in range(rng.randrange(0, 4))]
                 + [rng.randrange(1, 3)])
        qq = Poly(f3, [rng.randrange(3) for _ in range(rng.randrange(1, 3))]
                  + [rng.randrange(1, 3)])
        lhs = l_function(TwistedPower(p * qq * qq, 1))
        rhs = l_function(TwistedPower(p, 1))
        for prime in distinct_prime_factors(qq):
            if not (p % prime).is_zero():
                rhs = rhs.mul(local_factor(TwistedPower(p, 1), prime)
                              .inverse_factor())
        assert lhs == rhs


def test_distinct_prime_factors(f3):
    fac = distinct_prime_factors(Poly(f3, [0, 2, 0, 2]))
    assert sorted(f.coeffs for f in fac) == [(0, 1), (1, 0, 1)]
    assert distinct_prime_factors(Poly(f3, [2])) == []
