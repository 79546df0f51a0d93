import pytest

from carlitz import (field_make, Poly, LFun, lfun_order_at, TwistedPower,
                     build_matrix, l_function, analytic_rank,
                     infinity_factor, d_coefficients)
from carlitz.motive import _matrix_rows
from carlitz.linalg import det_identity_minus_mu, det_cofactor


def tp3(coeffs, n=1):
    return TwistedPower(Poly(field_make(3), coeffs), n)


def test_twisted_power_validation(f3):
    with pytest.raises(ValueError):
        TwistedPower(Poly.zero(f3), 1)
    with pytest.raises(ValueError):
        TwistedPower(Poly.one(f3), 0)
    t = tp3([0, 2, 0, 2])
    assert (t.m, t.k_min) == (3, 2)


def test_matrix_rank2_witness():
    t = tp3([0, 2, 0, 2])
    m = build_matrix(t, 2)
    f3 = field_make(3)
    assert m.entry(0, 0) == Poly(f3, [1])
    assert m.entry(0, 1) == Poly(f3, [0, 2])
    assert m.entry(1, 0).is_zero()
    assert m.entry(1, 1) == Poly(f3, [1])


def test_matrix_trivial_twists():
    assert build_matrix(tp3([1]), 1).entry(0, 0).is_zero()
    assert build_matrix(tp3([1], n=2), 1).entry(0, 0) == Poly(field_make(3), [1])


def test_matrix_rejects_small_k():
    with pytest.raises(ValueError):
        build_matrix(tp3([0, 2, 0, 2]), 1)


def test_band_structure_below_stable_rows(rng):
    # rows past the stable size vanish on and left of the diagonal
    for _ in range(15):
        q = rng.choice([2, 3])
        ctx = field_make(q)
        m = rng.randrange(0, 7)
        coeffs = [rng.randrange(q) for _ in range(m)] + [rng.randrange(1, q)]
        t = TwistedPower(Poly(ctx, coeffs), rng.randrange(1, 3))
        k = t.k_min + 2
        mat = build_matrix(t, k)
        for i in range(t.k_min, k):
            for j in range(i + 1):
                assert mat.entry(i, j).is_zero()


def test_l_function_examples():
    f3 = field_make(3)
    assert l_function(tp3([1])) == LFun.one(f3)
    assert l_function(tp3([0, 2, 0, 2])) == \
        LFun(f3, [Poly(f3, [1]), Poly(f3, [1]), Poly(f3, [1])])
    assert l_function(tp3([1], n=2)) == LFun(f3, [Poly(f3, [1]), Poly(f3, [2])])


def test_analytic_rank_examples():
    assert analytic_rank(tp3([1])) == 0
    assert analytic_rank(tp3([0, 2, 0, 2])) == 2
    # the degree-21 shift-stable witness has rank 5
    f3 = field_make(3)
    base = Poly(f3, [0, 2, 0, 1])
    p = Poly.zero(f3)
    for i, c in enumerate([0, 2, 0, 1, 0, 1, 0, 1]):
        if c:
            p = p + (base**i).scalar_mul(c)
    assert p.degree == 21
    assert analytic_rank(TwistedPower(p, 1)) == 5


def test_stability_of_determinant(rng):
    for _ in range(25):
        q = rng.choice([2, 3])
        ctx = field_make(q)
        m = rng.randrange(0, 10)
        coeffs = [rng.randrange(q) for _ in range(m)] + [rng.randrange(1, q)]
        n = rng.randrange(1, 3)
        t = TwistedPower(Poly(ctx, coeffs), n)
        dets = []
        for k in (t.k_min, t.k_min + 1, t.k_min + 2):
            rows = [list(r) for r in _matrix_rows(t, k)]
            vec = det_identity_minus_mu(rows, Poly.zero(ctx), Poly.one(ctx))
            dets.append(LFun(ctx, vec))
        assert dets[0] == dets[1] == dets[2]


def test_berkowitz_matches_cofactor_expansion(rng):
    # det(I - M U) evaluated at scalar points vs brute-force cofactor dets
    f3 = field_make(3)
    for _ in range(10):
        k = rng.randrange(1, 6)
        rows = [[Poly(f3, [rng.randrange(3), rng.randrange(3)])
                 for _ in range(k)] for _ in range(k)]
        vec = det_identity_minus_mu([list(r) for r in rows],
                                    Poly.zero(f3), Poly.one(f3))
        for t0 in range(3):
            for u0 in range(3):
                mat = [[(int(i == j) - u0 * rows[i][j].evaluate(t0)) % 3
                        for j in range(k)] for i in range(k)]
                scal = [[Poly(f3, [v]) for v in row] for row in mat]
                want = det_cofactor(scal, Poly.zero(f3), Poly.one(f3))
                got = sum(vec[d].evaluate(t0) * u0**d for d in range(len(vec))) % 3
                assert want == Poly(f3, [got])


def test_l_at_zero_is_one_and_degree_bound(rng):
    for _ in range(20):
        q = rng.choice([2, 3])
        ctx = field_make(q)
        m = rng.randrange(0, 8)
        coeffs = [rng.randrange(q) for _ in range(m)] + [rng.randrange(1, q)]
        n = rng.randrange(1, 3)
        l = l_function(TwistedPower(Poly(ctx, coeffs), n))
        assert l.coeff(0) == Poly.one(ctx)
        for j in range(l.u_degree + 1):
            assert l.coeff(j).degree <= n * j


def test_coset_membership_forces_unit_root(rng):
    # m ≡ -n mod q-1 with a_m = (-1)^n: row k_min yields a (1-U) factor
    f3 = field_make(3)
    for _ in range(25):
        n = rng.randrange(1, 3)
        m = rng.randrange(1, 8)
        if (m + n) % 2:
            m += 1
        lead = 2 if n % 2 else 1
        coeffs = [rng.randrange(3) for _ in range(m)] + [lead]
        t = TwistedPower(Poly(f3, coeffs), n)
        assert lfun_order_at(l_function(t), f3.one) >= 1
        rows = _matrix_rows(t, t.k_min)
        istar = (m + n) // 2 - 1  # 0-based row index
        for j in range(istar):
            assert rows[istar][j].is_zero()
        want_diag = f3.from_int((-1) ** n * lead)
        assert rows[istar][istar] == Poly.constant(f3, want_diag)


def test_infinity_factor_cases():
    f3 = field_make(3)
    t = tp3([0, 0, 0, 2])  # m=3, a3=2, n=1 -> boundary at 𝔫 = -2
    assert infinity_factor(t, -2) == LFun(f3, [Poly(f3, [1]), Poly(f3, [2])])
    assert infinity_factor(t, -3) == LFun.one(f3)
    t2 = tp3([0, 0, 1])  # m+n = 3, odd: never at the boundary
    assert infinity_factor(t2, -2) == LFun.one(f3)
    t3 = tp3([0, 0, 0, 0, 0, 0, 1], n=2)  # n even, a_m = 1, boundary -> 1 - U
    assert infinity_factor(t3, -4) == LFun(f3, [Poly(f3, [1]), Poly(f3, [2])])
    with pytest.raises(ValueError):
        infinity_factor(t, -1)


def test_boundary_determinant_identity(rng):
    # det at one size below stability equals L times the reciprocal factor
    f3 = field_make(3)
    for _ in range(20):
        n = rng.randrange(1, 3)
        m = rng.randrange(1, 8)
        if (m + n) % 2:
            m += 1
        coeffs = [rng.randrange(3) for _ in range(m)] + [rng.randrange(1, 3)]
        t = TwistedPower(Poly(f3, coeffs), n)
        kstar = (m + n) // 2 - 1
        if kstar < 1:
            continue
        rows = [list(r) for r in _matrix_rows(t, kstar)]
        small = LFun(f3, det_identity_minus_mu(rows, Poly.zero(f3), Poly.one(f3)))
        assert small.mul(infinity_factor(t, -(m + n) // 2)) == l_function(t)


def test_d_coefficients_examples():
    f3 = field_make(3)
    ds = d_coefficients(LFun.one(f3), 1)
    assert ds[0] == Poly.one(f3)
    l = l_function(tp3([0, 2, 0, 2]))  # (1-U)²
    ds = d_coefficients(l, 2)
    assert ds[0].is_zero() and ds[1].is_zero() and not ds[2].is_zero()
    with pytest.raises(ValueError):
        d_coefficients(l, 1)


def test_d_coefficients_leading_zeros_equal_rank(rng):
    f3 = field_make(3)
    for _ in range(100):
        m = rng.randrange(0, 10)
        coeffs = [rng.randrange(3) for _ in range(m)] + [rng.randrange(1, 3)]
        t = TwistedPower(Poly(f3, coeffs), 1)
        l = l_function(t)
        k = t.k_min
        ds = d_coefficients(l, k)
        lead_zeros = 0
        while lead_zeros <= k and ds[lead_zeros].is_zero():
            lead_zeros += 1
        assert lead_zeros == analytic_rank(t)
