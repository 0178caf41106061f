import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import isprime, n_order, primerange

from cyclofermat.prime_ideals import (
    IdealHNF,
    factor_ideal,
    hnf_mod,
    is_two_inert,
    primes_above,
    split_prime,
    two_inert_by_order,
    valuation,
)
from cyclofermat.real_cyclotomic import build_field


def order_mod_pm(p, r):
    k = n_order(p, r)
    return k // 2 if k % 2 == 0 and pow(p, k // 2, r) == r - 1 else k


def vp(n, p):
    n, k = abs(n), 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def test_split_examples(K5):
    (R,) = split_prime(K5, 5)
    assert (R.e, R.f) == (2, 1)
    assert R.gen_poly.coeffs == (3, 1)
    (two,) = split_prime(K5, 2)
    assert (two.e, two.f) == (1, 2)
    q11 = split_prime(K5, 11)
    assert [(q.e, q.f) for q in q11] == [(1, 1), (1, 1)]


@pytest.mark.parametrize("r", [5, 7, 11, 13, 17, 31])
def test_splitting_law(r):
    fld = build_field(r)
    d = fld.degree
    for p in primerange(2, 80):
        qs = split_prime(fld, p)
        assert sum(q.e * q.f for q in qs) == d
        if p == r:
            assert [(q.e, q.f) for q in qs] == [(d, 1)]
        else:
            f = order_mod_pm(p, r)
            assert all(q.e == 1 and q.f == f for q in qs)
            assert len(qs) == d // f


@pytest.mark.parametrize("r", [7, 11, 13])
def test_product_of_primes(r):
    fld = build_field(r)
    for p in primerange(2, 50):
        prod = IdealHNF.unit_ideal(fld)
        for q in split_prime(fld, p):
            prod = prod * q.ideal**q.e
        assert prod == IdealHNF.rational(fld, p)


def test_prime_ideal_norms(K7):
    for p in (2, 7, 13, 29):
        for q in split_prime(K7, p):
            assert q.ideal.norm() == q.norm == p**q.f


def test_r_prime_is_principal(K5):
    (R,) = split_prime(K5, 5)
    t = K5.theta
    assert IdealHNF.principal(t - 2) == R.ideal
    assert IdealHNF.principal(t - K5.theta_j(2)) == R.ideal
    assert R.ideal.basis == ((5, 0), (3, 1))
    assert IdealHNF.principal(t - 2) ** 2 == IdealHNF.rational(K5, 5)


def test_basic_valuations(K5):
    (R,) = split_prime(K5, 5)
    (two,) = split_prime(K5, 2)
    assert valuation(K5.theta - 2, R) == 1
    assert valuation(5, R) == 2
    assert valuation(2, two) == 1
    assert valuation(K5.element([1], 8), two) == -3


def test_valuation_of_zero(K5):
    (R,) = split_prime(K5, 5)
    with pytest.raises(ValueError, match="zero"):
        valuation(K5.zero, R)


@pytest.mark.parametrize("r", [5, 7, 11])
def test_valuations_sum_to_norm_valuation(r):
    fld = build_field(r)
    d = fld.degree

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-60, 60), min_size=d, max_size=d))
    def check(cs):
        x = fld.element(cs)
        if x.is_zero():
            return
        n = int(x.norm())
        for p in (2, 3, r, 29):
            total = sum(q.f * valuation(x, q) for q in split_prime(fld, p))
            assert total == vp(n, p)

    check()


def test_valuation_multiplicative(K7):
    a, b = K7.element([3, 1, 2]), K7.element([2, -1, 5])
    for q in primes_above(K7, int(a.norm() * b.norm())):
        assert valuation(a * b, q) == valuation(a, q) + valuation(b, q)


def test_factor_ideal_norm(K7):
    x = K7.element([12, 5, -3])
    I = IdealHNF.principal(x)
    fac = factor_ideal(I)
    assert abs(x.norm()) == I.norm()
    prod = 1
    for q, v in fac:
        prod *= q.norm**v
        assert valuation(I, q) == v == valuation(x, q)
    assert prod == I.norm()


def test_ideal_sum_is_gcd(K5):
    a = IdealHNF.principal(K5.element([6]))
    b = IdealHNF.principal(K5.element([4]))
    assert a + b == IdealHNF.rational(K5, 2)


def test_contains(K5):
    (R,) = split_prime(K5, 5)
    assert (K5.theta - 2) in R.ideal
    assert K5.one not in R.ideal
    assert K5.element([1], 2) not in R.ideal


def test_hnf_mod_lattice():
    H = hnf_mod([[4, 6], [2, 2]], 12, 2)
    for i, row in enumerate(H):
        assert row[i] > 0 and all(c == 0 for c in row[i + 1:])
        for j in range(i):
            assert 0 <= row[j] < H[j][j]


@pytest.mark.parametrize("r", [5, 7, 11, 13, 19, 23, 37, 47, 53, 59, 61])
def test_two_inert_expected_primes(r):
    assert is_two_inert(build_field(r))


@pytest.mark.parametrize("r,expected", [(17, False), (31, False), (41, False), (29, True), (43, False)])
def test_two_inert_examples(r, expected):
    assert two_inert_by_order(r) is expected
    assert is_two_inert(build_field(r)) is expected


def test_inertness_agrees_below_200():
    for r in primerange(5, 200):
        assert is_two_inert(build_field(r), cross_check=False) == two_inert_by_order(r)


def test_split_requires_prime(K5):
    with pytest.raises(ValueError, match="not prime"):
        split_prime(K5, 6)
