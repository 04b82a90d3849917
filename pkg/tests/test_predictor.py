from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artifact import oracle
from artifact.jhfactor import JHMultiset, jh_multiset, modules_isomorphic
from artifact.modarith import bracket, sigma_p
from artifact.polyrep import GAMMA, q_module
from artifact.predictor import (
    NotApplicable,
    dim_x_r_minus_p,
    dim_x_ri,
    doty_necessary,
    explain_q,
    induced_jh,
    monomials_equal,
    periodicity_claim,
    q_irreducible,
    q_levelwise,
    q_structure,
    q_tree,
    report,
    singular_quotient,
    singular_with_route,
    successive_quotient,
    xrp_structure,
)


# dimensions

def test_dim_examples():
    assert dim_x_ri(29, 2, 3) == 6 == oracle.dim_x(29, 2, 3)
    assert dim_x_ri(22, 1, 3) == 8 == oracle.dim_x(22, 1, 3)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_dim_x_r_saturates(p):
    for r in range(1, 300):
        if sigma_p(r, p) >= p:
            assert dim_x_ri(r, 0, p) == p + 1 == oracle.dim_x(r, 0, p)


def test_dim_windows():
    with pytest.raises(NotApplicable):
        dim_x_ri(0, 0, 5)
    with pytest.raises(NotApplicable):
        dim_x_ri(10, 1, 5)  # r0 = 0 < 1 and r < 2p+1
    with pytest.raises(NotApplicable):
        dim_x_ri(5 * 4 + 2, 3, 5)  # r0 < i needs r > (i+1)(p+1)
    with pytest.raises(ValueError):
        dim_x_ri(50, 5, 5)


# equality

def test_equality_examples():
    assert monomials_equal(11, 2, 1, 3)
    assert oracle.monomials_equal(11, 2, 1, 3)
    assert not monomials_equal(13, 2, 1, 3)
    assert oracle.dim_x(13, 1, 3) < oracle.dim_x(13, 2, 3)


@pytest.mark.parametrize("p", [5, 7])
def test_equality_fails_when_r0_is_j(p):
    for r in range(p, 200):
        j = r % p
        for i in range(j + 1, p):
            if j >= 1:
                assert not monomials_equal(r, i, j, p)


def test_equality_arguments():
    with pytest.raises(ValueError):
        monomials_equal(20, 1, 1, 3)
    with pytest.raises(NotApplicable):
        monomials_equal(2, 2, 1, 3)


# successive quotients

@pytest.mark.parametrize("p", [3, 5, 7])
def test_successive_branches(p):
    rng = random.Random(p)
    seen = set()
    for _ in range(60):
        i = rng.randrange(1, p)
        r = rng.randrange((i + 1) * (p + 1) + 1, 300)
        r0, s = r % p, sigma_p(r - i, p)
        got = successive_quotient(r, i, p)
        if r0 >= i and s < r0:
            assert got == JHMultiset(p)
            seen.add("zero")
        if r0 >= i and s >= p:
            assert got == induced_jh(r - i, i, p)
            seen.add("pair")
        assert got == oracle.successive_jh(r, i, p)
    assert seen


def test_successive_example_5_47_2():
    assert successive_quotient(47, 2, 5) == oracle.successive_jh(47, 2, 5)


# singular quotients

@pytest.mark.parametrize("p", [5, 7])
def test_singular_x_r_row(p):
    for r in range((p - 1) * (p + 1) + p, (p - 1) * (p + 1) + p + 3 * p):
        a = bracket(r, p)
        for j in range(1, p):
            if j != a:
                assert singular_quotient(r, 0, j, p) == JHMultiset(p)


@pytest.mark.parametrize("p", [5, 7])
def test_singular_i_equals_a(p):
    for a in range(1, p):
        for r0 in range(a, p):
            r = next(x for x in range(a * (p + 1) + p, 10 * p * p) if x % p == r0 and bracket(x, p) == a)
            assert singular_quotient(r, a, a, p) == JHMultiset.of(p, (p - 1 - a, a))


def test_singular_sweep_5_47_3():
    for j in range(5):
        try:
            want = singular_quotient(47, 3, j, 5)
        except NotApplicable:
            continue
        assert want == oracle.singular_jh(47, 3, j, 5), j


@pytest.mark.parametrize("p", [5, 7])
def test_singular_p_minus_1_routing(p):
    # the P(p-1) cokernel uses X_{r-(p-2)}^(p-1)/X_{r-(p-2)}^(p)
    for r in range((p - 1) * (p + 1) + p, (p - 1) * (p + 1) + p + 2 * (p - 1)):
        value, route = singular_with_route(r, p - 2, p - 1, p)
        assert route.startswith("reduction")
        assert value == oracle.singular_jh(r, p - 2, p - 1, p)


# Q(i)

def test_q_spot_value():
    assert q_structure(42, 2, 5) == JHMultiset.of(5, (2, 0))
    assert q_irreducible(42, 2, 5)
    assert oracle.q_jh(42, 2, 5) == JHMultiset.of(5, (2, 0))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_q0(p):
    for r in range(p, 100):
        a = bracket(r, p)
        assert q_structure(r, 0, p) == JHMultiset.of(p, (p - 1 - a, a))


def test_q_not_irreducible():
    assert not q_irreducible(42, 3, 5)
    assert len(oracle.q_jh(42, 3, 5)) >= 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_q_irreducible_second_family(p):
    for r in range((p - 1) * (p + 1) + p, 6 * p * p):
        if r % p == 0 and bracket(r, p) == 1:
            assert q_irreducible(r, p - 1, p)
            assert len(oracle.q_jh(r, p - 1, p)) == 1


def test_q_p7_sample_against_oracle():
    p = 7
    for i in range(p):
        r = i * (p + 1) + p + 5
        assert q_structure(r, i, p) == oracle.q_jh(r, i, p)


@pytest.mark.parametrize("p", [5, 7])
def test_q_dimension_matches_before_factors(p):
    rng = random.Random(11 * p)
    for _ in range(8):
        i = rng.randrange(0, p)
        r = rng.randrange(i * (p + 1) + p, 200)
        assert q_structure(r, i, p).dim == q_module(r, i, p).dim


def test_q_both_routes_agree():
    for r in range(40, 80):
        for i in range(5):
            try:
                assert q_tree(r, i, 5).result == q_levelwise(r, i, 5)
            except NotApplicable:
                pass


def test_explain_q():
    assert len(explain_q(30, 0, 5).splitlines()) == 1
    text = explain_q(42, 2, 5)
    assert text.splitlines()[0].startswith("Q(2) = V2")


# X_{r-p}

def test_xrp_examples():
    pred = xrp_structure(22, 3)
    assert (pred.case, pred.s, pred.dim) == ("middle", 22, 8)
    assert oracle.xrp_module(22, 3).dim == 8
    pred = xrp_structure(10, 3)
    assert (pred.case, pred.s) == ("upper", 30)
    res = modules_isomorphic(oracle.xrp_module(10, 3), oracle.x_s_minus_1_module(30, 3), GAMMA)
    assert res.isomorphic and res.mode == "witnessed"


@pytest.mark.parametrize("p", [3, 5])
def test_xrp_divide_case(p):
    for r in range(3 * p, 12 * p, p):
        pred = xrp_structure(r, p)
        assert (pred.case, pred.s) == ("divide", r // p)
        res = modules_isomorphic(oracle.xrp_module(r, p), oracle.x_s_minus_1_module(r // p, p), GAMMA)
        assert res.mode == "witnessed"


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([3, 5, 7, 11]), st.integers(min_value=0, max_value=10**4))
def test_xrp_partition(p, k):
    r = 2 * p + 1 + k
    case = xrp_structure(r, p).case
    r0, r1 = r % p, (r // p) % p
    lo, hi = sigma_p(r - p, p), sigma_p(r - 1, p)
    assert [lo < hi, lo == hi, lo > hi].count(True) == 1
    assert (case == "divide") == (r0 == 0)
    assert (case == "middle") == (r0 != 0 and r1 != 0)


def test_xrp_dim_corollary():
    for p in [3, 5]:
        for r in range(p * (2 * p + 1), p * (2 * p + 1) + 40):
            assert dim_x_r_minus_p(r, p) == oracle.xrp_module(r, p).dim
    with pytest.raises(NotApplicable):
        dim_x_r_minus_p(20, 3)


# carry patterns

@given(st.sampled_from([3, 5, 7]), st.integers(min_value=1, max_value=5000), st.data())
def test_doty_reflexive(p, r, data):
    i = data.draw(st.integers(min_value=0, max_value=r))
    assert doty_necessary(r, i, i, p)


def test_doty_not_sufficient():
    p = 5
    for r in range(p, 200):
        if r % p >= 1:
            assert doty_necessary(r, 1, 0, p)
            X0, X1 = oracle.x_space(r, 0, p), oracle.x_space(r, 1, p)
            assert X0.issubset(X1) and X0 != X1


@pytest.mark.parametrize("p", [3, 5])
def test_doty_necessity_sweep(p):
    for r in range(p, 120):
        spaces = [oracle.x_space(r, i, p) for i in range(p)]
        for i in range(p):
            for j in range(p):
                if spaces[j].issubset(spaces[i]):
                    assert doty_necessary(r, i, j, p), (r, i, j)


# periodicity

def test_periodicity_trivial():
    claim = periodicity_claim(20, 20, 0, 2, 1, 3)
    assert "V^(n)/V^(m)" in claim.claims


def test_periodicity_example_p3():
    p, n, m, i, s, r = 3, 0, 2, 1, 17, 23
    claim = periodicity_claim(r, s, n, m, i, p)
    A, B = oracle.v_segment_module(r, n, m, p), oracle.v_segment_module(s, n, m, p)
    assert A.dim == B.dim and jh_multiset(A) == jh_multiset(B)
    X, Y = oracle.x_segment_module(r, i, n, m, p), oracle.x_segment_module(s, i, n, m, p)
    assert X.dim == Y.dim and jh_multiset(X) == jh_multiset(Y)
    assert "Q(i)" in claim.claims


def test_periodicity_q3_p5():
    p, i = 5, 3
    for s in range(i * (p + 1) + p, i * (p + 1) + p + 10):
        assert oracle.q_jh(s, i, p) == oracle.q_jh(s + 20, i, p)
        assert q_structure(s, i, p) == q_structure(s + 20, i, p)


def test_periodicity_preconditions():
    with pytest.raises(ValueError):
        periodicity_claim(24, 17, 0, 2, 1, 3)
    with pytest.raises(ValueError):
        periodicity_claim(23, 17, 2, 2, 1, 3)


# windows

@settings(max_examples=200, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.data())
def test_below_window_raises(p, data):
    i = data.draw(st.integers(min_value=1, max_value=p - 1))
    r = data.draw(st.integers(min_value=1, max_value=i * (p + 1) + p - 1))
    with pytest.raises(NotApplicable):
        q_structure(r, i, p)
    with pytest.raises(NotApplicable):
        q_irreducible(r, i, p)
    j = data.draw(st.integers(min_value=0, max_value=p - 1))
    r2 = data.draw(st.integers(min_value=1, max_value=j * (p + 1) + p - 1))
    with pytest.raises(NotApplicable):
        singular_quotient(r2, 0, j, p)
    r3 = data.draw(st.integers(min_value=1, max_value=2 * p))
    with pytest.raises(NotApplicable):
        xrp_structure(r3, p)


def test_report_wraps_value():
    rep = report("qstruct", 42, 2, 5)
    assert rep.value == JHMultiset.of(5, (2, 0))
    assert rep.kind == "exact-sequence tree" and rep.window
    with pytest.raises(NotApplicable):
        report("dim", 0, 0, 5)


def test_q_a_irreducible_family():
    # i = a with r0 >= a gives an irreducible Q(a)
    for p in [5, 7]:
        for a in range(1, p - 1):
            r = next(x for x in range(a * (p + 1) + p, 20 * p * p) if bracket(x, p) == a and x % p >= a)
            assert q_irreducible(r, a, p)
            assert len(oracle.q_jh(r, a, p)) == 1
