import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Poly, cos, minimal_polynomial, pi, symbols

from cyclofermat.real_cyclotomic import (
    FieldElement,
    RealCyclotomicField,
    build_field,
    chebyshev_polys,
    conjugate,
    invert,
    is_unit,
    norm,
    trace,
    verify_lemma_cycl,
)

X = symbols("x")
RS = [5, 7, 11, 13]


def embed(x: FieldElement, j: int = 1) -> float:
    r = x.field.r
    t = 2 * math.cos(2 * math.pi * j / r)
    return sum(c * t**i for i, c in enumerate(x.num)) / x.den


def elements(fld, max_den=6):
    d = fld.degree
    return st.builds(
        lambda cs, den: fld.element(cs, den),
        st.lists(st.integers(-30, 30), min_size=d, max_size=d),
        st.integers(1, max_den),
    )


@pytest.mark.parametrize("r", [5, 7, 11, 13, 17, 19])
def test_min_poly_matches_sympy(r):
    ref = Poly(minimal_polynomial(2 * cos(2 * pi / r), X), X)
    ours = build_field(r).min_poly
    assert list(reversed(ours.coeffs)) == [int(c) for c in ref.all_coeffs()]


def test_min_poly_examples():
    assert build_field(5).min_poly.coeffs == (-1, 1, 1)
    assert build_field(7).min_poly.coeffs == (-1, -2, 1, 1)


def test_chebyshev():
    V = chebyshev_polys(4)
    assert V[0].coeffs == (2,)
    assert V[2].coeffs == (-2, 0, 1)
    assert V[3].coeffs == (0, -3, 0, 1)


@pytest.mark.parametrize("r", [4, 9, 3, 2])
def test_rejects_bad_r(r):
    with pytest.raises(ValueError):
        RealCyclotomicField(r)


def test_theta_relations(K5):
    t = K5.theta
    assert t * t == -t + 1
    assert conjugate(t, 2) == -t - 1
    assert norm(t) == -1
    assert norm(t - 2) == 5
    assert norm(2 * t + 1) == -5
    assert trace(t) == -1


def test_theta_plus_two_is_unit_r7(K7):
    assert abs(norm(K7.theta + 2)) == 1
    assert is_unit(K7.theta + 2)


@pytest.mark.parametrize("r", RS)
def test_theta_j_embeddings(r):
    fld = build_field(r)
    for j in range(1, fld.degree + 1):
        assert embed(fld.theta_j(j)) == pytest.approx(2 * math.cos(2 * math.pi * j / r))


@pytest.mark.parametrize("r", RS)
def test_conjugates_match_embeddings(r):
    fld = build_field(r)
    x = fld.element([3, -1, 2][: fld.degree])
    for j in range(1, fld.degree + 1):
        assert embed(x.conjugate(j)) == pytest.approx(embed(x, j))


@pytest.mark.parametrize("r", [5, 7, 11])
def test_field_axioms(r):
    fld = build_field(r)

    @settings(max_examples=40, deadline=None)
    @given(elements(fld), elements(fld), elements(fld))
    def check(a, b, c):
        assert (a + b) * c == a * c + b * c
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a - a == fld.zero
        if not a.is_zero():
            assert a * invert(a) == fld.one
            assert (b / a) * a == b

    check()


@pytest.mark.parametrize("r", [5, 7, 11])
def test_norm_is_product_of_conjugates(r):
    fld = build_field(r)

    @settings(max_examples=30, deadline=None)
    @given(elements(fld))
    def check(a):
        prod = fld.one
        for c in a.conjugates():
            prod = prod * c
        assert prod.is_rational()
        assert prod.rational() == a.norm()
        assert float(a.norm()) == pytest.approx(
            math.prod(embed(a, j) for j in range(1, fld.degree + 1)), rel=1e-9, abs=1e-9
        )

    check()


@settings(max_examples=40, deadline=None)
@given(elements(build_field(7)), elements(build_field(7)))
def test_norm_multiplicative(a, b):
    assert (a * b).norm() == a.norm() * b.norm()


def test_trace_is_sum_of_embeddings(K7):
    x = K7.element([1, 2, 3])
    assert float(trace(x)) == pytest.approx(sum(embed(x, j) for j in range(1, 4)))


def test_rational_coercion(K5):
    half = K5.element([Fraction(1, 2)])
    assert half == Fraction(1, 2)
    assert half + half == 1
    assert 1 - K5.theta == K5.element([1, -1])
    assert str(K5.element([3], 4)) == "3/4"


def test_pow_negative(K5):
    t = K5.theta
    assert t**-2 * t**2 == 1


def test_division_by_zero(K5):
    with pytest.raises(ZeroDivisionError):
        K5.one / K5.zero


def test_mixed_fields_rejected(K5, K7):
    with pytest.raises(ValueError):
        K5.theta + K7.theta


@pytest.mark.parametrize("r", [5, 7, 11, 13, 17, 19, 23])
def test_discriminant(r):
    fld = build_field(r)
    assert fld.discriminant() == r ** (fld.degree - 1)
    assert fld.check_discriminant()


@pytest.mark.parametrize("r", [5, 7, 11, 13, 17])
def test_lemma_checks(r):
    rep = verify_lemma_cycl(build_field(r), ideals=True)
    assert rep.ok, rep.failures()
    d = (r - 1) // 2
    assert len(rep.checks) == 3 * d + d * (d - 1) // 2


def test_build_field_cached():
    assert build_field(11) is build_field(11)
