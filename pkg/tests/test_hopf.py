from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from algcalc.groups import cyclic_group, symmetric_group
from algcalc.hopf import (HopfAlgebra, LinearForm, RMatrix, adjoint_action, convolution, dual_pairing_check,
                          evaluation_pairing, function_hopf, group_hopf, left_convolve, qybe_check,
                          right_convolve, uq_bplus, verify_hopf)
from algcalc.scalar import ONE, ZERO, Scalar

from conftest import rand_vec

INSTANCES = {
    "cz2": lambda: group_hopf(cyclic_group(2)),
    "cz3": lambda: group_hopf(cyclic_group(3)),
    "cs3": lambda: group_hopf(symmetric_group(3)),
    "fun_z2": lambda: function_hopf(cyclic_group(2)),
    "fun_s3": lambda: function_hopf(symmetric_group(3)),
}


@pytest.mark.parametrize("name", sorted(INSTANCES))
def test_axioms(name):
    h = INSTANCES[name]()
    rep = verify_hopf(h)
    assert rep.passed, rep.failed()
    assert rep.law("antipode anticomultiplicative").passed
    if h.is_cocommutative() or h.is_commutative():
        assert h.antipode_squared_is_identity()


def test_group_hopf_examples():
    G = cyclic_group(2)
    h = group_hopf(G)
    g = 1 - G.identity
    assert h.S(h.basis(g)) == h.basis(g)
    assert h.is_cocommutative() and h.is_commutative()
    f = function_hopf(symmetric_group(3))
    assert f.is_commutative() and not f.is_cocommutative()
    assert not group_hopf(symmetric_group(3)).is_commutative()


def test_function_coproduct_is_pullback_of_product():
    G = symmetric_group(3)
    h = function_hopf(G)
    for x in range(G.order):
        for y in range(G.order):
            # Delta(delta_g)(x, y) = delta_g(xy)
            for g in range(G.order):
                assert h.comul[g].get((x, y), ZERO) == (ONE if G.mul(x, y) == g else ZERO)


def test_corrupted_coproduct_fails():
    G = symmetric_group(3)
    good = function_hopf(G)
    comul = {i: [(j, k, c) for (j, k), c in d.items()] for i, d in good.comul.items()}
    comul[0] = comul[0][1:]
    bad = HopfAlgebra(good.algebra, comul, good.counit, good.antipode)
    rep = verify_hopf(bad)
    assert not rep.passed
    law = rep.law("coassociativity")
    assert not law.passed and law.witness is not None


@pytest.mark.parametrize("name", ["cz3", "fun_s3"])
def test_convolution(name, rng):
    h = INSTANCES[name]()
    eps = LinearForm(h.counit)
    for _ in range(10):
        f, g, k = (LinearForm(rand_vec(rng, h.dim)) for _ in range(3))
        assert convolution(eps, f, h) == f == convolution(f, eps, h)
        assert convolution(convolution(f, g, h), k, h) == convolution(f, convolution(g, k, h), h)
        a = rand_vec(rng, h.dim)
        fg = convolution(f, g, h)(a)
        assert fg == g(right_convolve(a, f, h)) == f(left_convolve(g, a, h))


def test_adjoint_actions():
    G = symmetric_group(3)
    h = group_hopf(G)
    for x in range(G.order):
        for y in range(G.order):
            conj = G.mul(G.mul(x, y), G.inv(x))
            assert adjoint_action(h, h.basis(x), h.basis(y)) == h.basis(conj)
            assert adjoint_action(h, h.basis(x), h.basis(y), "right") == h.basis(G.mul(G.mul(G.inv(x), y), x))
    f = function_hopf(G)
    for x in range(G.order):
        for y in range(G.order):
            expect = [f.eps(f.basis(x)) * c for c in f.basis(y)]
            assert adjoint_action(f, f.basis(x), f.basis(y)) == expect
    for H in (h, f):
        for y in range(H.dim):
            assert adjoint_action(H, H.one(), H.basis(y)) == H.basis(y)


@pytest.mark.parametrize("G", [cyclic_group(2), cyclic_group(3), symmetric_group(3)])
def test_evaluation_pairing(G):
    A, B = group_hopf(G), function_hopf(G)
    P = evaluation_pairing(A, B)
    rep = dual_pairing_check(A, B, P)
    assert rep.passed, rep.failed()
    P[0][0] = ZERO
    bad = dual_pairing_check(A, B, P)
    assert not bad.law("pairing: non-degenerate").passed


def test_identity_r_matrix():
    for name in ("cz2", "cz3", "cs3"):
        h = INSTANCES[name]()
        assert qybe_check(RMatrix.identity(h), h).passed
    f = INSTANCES["fun_s3"]()
    rep = qybe_check(RMatrix.identity(f), f)
    assert rep.law("quantum Yang-Baxter").passed
    flip = rep.law("flipped coproduct = R Delta R^-1")
    assert not flip.passed and flip.witness is not None


def test_non_invertible_r_rejected():
    h = INSTANCES["cz2"]()
    with pytest.raises(ValueError):
        RMatrix(h, [1, 1, 1, 1])
    with pytest.raises(ValueError):
        RMatrix(h, {})


def test_cz2_nontrivial_r_matrix():
    # R = 1/2 (1(x)1 + 1(x)g + g(x)1 - g(x)g) is the standard triangular structure on CZ2
    G = cyclic_group(2)
    h = group_hopf(G)
    e, g = G.identity, 1 - G.identity
    half = Fraction(1, 2)
    R = RMatrix(h, {(e, e): half, (e, g): half, (g, e): half, (g, g): -half})
    assert qybe_check(R, h).passed


def test_uq_examples():
    U = uq_bplus(2)
    q = Scalar(2)
    assert U.normal_form("ga") == {(1, 1): q}
    assert U.delta(U.a()) == {((1, 0), (0, 0)): ONE, ((0, 1), (1, 0)): ONE}
    assert U.S(U.a()) == {(1, -1): -1 / q}
    assert U.S(U.a()) == U.scale(U.normal_form("Ga"), -1)
    assert U.pair(U.a(), U.a()) == 1 and U.pair(U.g(), U.g()) == q
    assert U.pair(U.a(), U.g()) == 0 == U.pair(U.g(), U.a())
    anti = U.add(U.mul(U.S(U.a()), U.one()), U.mul(U.S(U.g()), U.a()))
    assert not any(anti.values())
    assert U.verify().passed
    with pytest.raises(ValueError):
        uq_bplus(0)


def rho(U, x):
    """Two-dimensional representation a -> E12, g -> diag(q, 1)."""
    q = sympy.Rational(U.q.re.numerator, U.q.re.denominator)
    out = sympy.zeros(2, 2)
    A = sympy.Matrix([[0, 1], [0, 0]])
    for (m, k), c in x.items():
        c = sympy.Rational(c.re.numerator, c.re.denominator)
        out += c * A ** m * sympy.diag(q ** k, 1)
    return out


@given(st.lists(st.sampled_from("agG"), max_size=6), st.lists(st.sampled_from("agG"), max_size=6),
       st.sampled_from([2, 3, Fraction(1, 3)]))
def test_uq_products_match_representation(w1, w2, q):
    U = uq_bplus(q)
    x, y = U.normal_form("".join(w1)), U.normal_form("".join(w2))
    assert rho(U, U.mul(x, y)) == rho(U, x) * rho(U, y)
    assert U.normal_form("".join(w1 + w2)) == U.mul(x, y)


@pytest.mark.parametrize("q", [3, Fraction(1, 2)])
def test_uq_other_parameters(q):
    assert uq_bplus(q, degree_cap=4).verify().passed
