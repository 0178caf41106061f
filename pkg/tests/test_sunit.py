import itertools
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import factorint

from cyclofermat.prime_ideals import split_prime, valuation
from cyclofermat.real_cyclotomic import build_field
from cyclofermat.sunit import (
    DISCLAIMER,
    Completeness,
    certify_field,
    check_valuation_bound,
    default_generators,
    enumerate_solutions,
    is_s_unit,
    lambda_orbit,
    legendre_j,
    legendre_j_sym,
    load_generator_file,
    parity_descent_step,
)


def outside_valuations_vanish(x, support):
    num = x.field.element(x.num)
    n = abs(int(num.norm())) * x.den
    for ell in factorint(n):
        if ell in support:
            continue
        for q in split_prime(x.field, ell):
            if valuation(x, q) != 0:
                return False
    return True


def test_default_generators_r5(K5):
    G = default_generators(K5, "S2")
    t = K5.theta
    vals = G.values()
    assert vals == [-K5.one, -t - 1, t + 2, -t + 1, K5.element([2])]
    assert G.completeness is Completeness.BEST_EFFORT
    assert all(abs(v.norm()) == 1 for v in vals[:-1])
    G2r = default_generators(K5, "S2r")
    assert G2r.values()[-1] == t - 2
    assert len(G2r) == len(G) + 1


def test_default_generators_r7(K7):
    G = default_generators(K7, "2")
    units = [v for v in G.values() if abs(v.norm()) == 1]
    assert len(units) == 6
    assert len(G) == 7


def test_generator_valuation_vectors(K7):
    G = default_generators(K7, "S2r")
    for g in G.generators:
        assert g.valuations == tuple(valuation(g.value, q) for q in G.S)


def test_unknown_spec(K5):
    with pytest.raises(ValueError):
        default_generators(K5, "S3")


def test_examples_r5(K5):
    lams = {s.lam for s in enumerate_solutions(default_generators(K5, "S2"), 3)}
    t = K5.theta
    assert K5.element([2]) in lams
    assert K5.element([Fraction(1, 2)]) in lams
    assert t + 2 in lams
    assert -t - 1 in lams


def test_rational_solutions_r5(K5):
    sols = enumerate_solutions(default_generators(K5, "S2"), 3)
    rational = {s.lam.rational() for s in sols if s.lam.is_rational()}
    assert rational == {Fraction(2), Fraction(-1), Fraction(1, 2)}


@pytest.mark.parametrize("r,spec,bound", [(5, "S2", 2), (5, "S2r", 1), (7, "S2", 1)])
def test_enumeration_matches_naive_box(r, spec, bound):
    fld = build_field(r)
    G = default_generators(fld, spec)
    ranges = [range(0, 2) if g.label == "-1" else range(-bound, bound + 1) for g in G.generators]
    naive = set()
    for exps in itertools.product(*ranges):
        lam = fld.one
        for g, e in zip(G.values(), exps):
            lam = lam * g**e
        if lam != 1 and is_s_unit(1 - lam, G.support):
            naive.add(lam)
    sols = enumerate_solutions(G, bound)
    in_box = {s.lam for s in sols if s.in_box}
    assert in_box == naive
    closure = set()
    for lam in naive:
        closure.update(lambda_orbit(lam))
    assert {s.lam for s in sols} == closure


@pytest.mark.parametrize("r,spec", [(5, "S2"), (5, "S2r"), (7, "S2")])
def test_solutions_are_s_units(r, spec):
    fld = build_field(r)
    G = default_generators(fld, spec)
    for s in enumerate_solutions(G, 2):
        assert s.lam + s.mu == 1
        for x in (s.lam, s.mu):
            assert outside_valuations_vanish(x, G.support)


def test_orbit_tags_consistent(K5):
    sols = enumerate_solutions(default_generators(K5, "S2r"), 2)
    by_tag = {}
    for s in sols:
        by_tag.setdefault(s.orbit_tag, set()).add(s.lam)
    for lams in by_tag.values():
        some = next(iter(lams))
        assert lams == set(lambda_orbit(some))
    assert len(by_tag) == len({frozenset(v) for v in by_tag.values()})


def test_exponent_vectors_reproduce(K5):
    G = default_generators(K5, "S2")
    for s in enumerate_solutions(G, 2):
        if s.lam_exponents is None:
            continue
        prod = K5.one
        for g, e in zip(G.values(), s.lam_exponents):
            prod = prod * g**e
        assert prod == s.lam


def test_deterministic(K7):
    G = default_generators(K7, "S2")
    a = [s.to_dict() for s in enumerate_solutions(G, 2)]
    b = [s.to_dict() for s in enumerate_solutions(G, 2)]
    assert a == b


def test_bound_must_be_positive(K5):
    with pytest.raises(ValueError):
        enumerate_solutions(default_generators(K5), 0)


def test_valuation_bound_examples(K5):
    (P,) = split_prime(K5, 2)
    res = check_valuation_bound(K5.element([2]), -K5.one, P)
    assert res and res.triple() == (1, 0, 4)
    res = check_valuation_bound(Fraction(1, 16), Fraction(15, 16), P)
    assert res and res.triple() == (-4, -4, 4)
    assert not check_valuation_bound(Fraction(1, 32), Fraction(31, 32), P)


def test_valuation_bound_preconditions():
    with pytest.raises(ValueError):
        check_valuation_bound(2, 2, 2)
    with pytest.raises(ValueError):
        check_valuation_bound(0, 1, 2)


def test_parity_step_rational():
    for nu, s0 in ((17, 5), (33, 6), (65, 7)):
        step = parity_descent_step(nu, 2)
        assert step.s0 == s0
        assert step.lam + step.mu == 1
        assert step.v_lam == 2 * s0 - 4 > s0
    assert parity_descent_step(17, 2).lam == Fraction(-64, 17)


def test_parity_step_below_threshold():
    with pytest.raises(ValueError, match="s0 >= 5"):
        parity_descent_step(3, 2)
    step = parity_descent_step(3, 2, force=True)
    assert step.lam == Fraction(4, 3) and step.v_lam == 2 and step.forced


@pytest.mark.parametrize("s0", [5, 6, 7])
def test_parity_step_field(K5, s0):
    (P,) = split_prime(K5, 2)
    step = parity_descent_step(1 + 2 ** (s0 - 1) * K5.theta, P)
    assert step.s0 == s0 and step.v_lam == 2 * s0 - 4
    assert step.lam + step.mu == 1


@settings(max_examples=50)
@given(st.fractions().filter(lambda x: x not in (0, 1)))
def test_parity_identity(nu):
    assume(nu * nu != 1 and nu != 0)
    a = -((1 - nu) ** 2) / (4 * nu)
    b = (1 + nu) ** 2 / (4 * nu)
    assert a + b == 1


def test_legendre_values(K5):
    assert legendre_j(-1) == legendre_j(2) == legendre_j(Fraction(1, 2)) == 1728
    assert legendre_j_sym(2, -1) == 1728
    t = K5.theta
    assert legendre_j(t + 2) == legendre_j_sym(t + 2, -t - 1)
    with pytest.raises(ValueError):
        legendre_j(1)


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=50).filter(lambda x: x not in (0, 1)))
def test_legendre_orbit_rational(lam):
    j = legendre_j(lam)
    assert all(legendre_j(x) == j for x in lambda_orbit(lam))
    assert legendre_j_sym(lam, 1 - lam) == j


def write_gens(tmp_path, text):
    p = tmp_path / "gens.txt"
    p.write_text(text)
    return p


def test_generator_file(tmp_path, K5):
    p = write_gens(tmp_path, "# fundamental unit and 2\n2, 1\n2\n1/2  # inverse of 2\n")
    G = load_generator_file(K5, p, "S2")
    assert G.completeness is Completeness.USER_CERTIFIED
    assert G.values()[0] == -K5.one
    assert G.values()[1] == K5.theta + 2
    assert G.values()[3] == Fraction(1, 2)
    rep = certify_field(K5, "S2", 2, G)
    assert rep.disclaimer is None


@pytest.mark.parametrize("text,msg", [("1,x\n", "line 1"), ("\n3\n", "not an S2-unit"), ("1,2,3\n", "line 1"), ("#\n", "no generators")])
def test_generator_file_errors(tmp_path, K5, text, msg):
    with pytest.raises(ValueError, match=msg):
        load_generator_file(K5, write_gens(tmp_path, text), "S2")


@pytest.mark.parametrize("r,spec,bound", [(5, "S2", 4), (5, "S2r", 3), (7, "S2", 3)])
def test_certify(r, spec, bound):
    rep = certify_field(build_field(r), spec, bound)
    assert rep.all_hold
    assert rep.disclaimer == DISCLAIMER
    assert all(c["case_split_ok"] for c in rep.checks)
    d = rep.to_dict()
    assert d["n_solutions"] == len(rep.solutions) > 0
