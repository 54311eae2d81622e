from math import comb

import pytest
from hypothesis import given, strategies as st

from algcalc.lie import (LIE_LIBRARY, Cochain, JacobiError, LieAlgebra, Representation, abelian, betti_table,
                         ce_coboundary, cup_product, direct_sum, dual_basis_cochain, heisenberg,
                         is_coboundary, maurer_cartan_check, su2, unit_cochain, upper_triangular)
from algcalc.scalar import ONE, Scalar

from conftest import rand_vec
from oracles import betti_oracle


def random_cochain(rep, k, rng):
    from itertools import combinations
    comps = {}
    for key in combinations(range(rep.lie.dim), k):
        if rng.random() < 0.7:
            comps[key] = rand_vec(rng, rep.module_dim, complex_=False)
    return Cochain(rep, k, comps)


def test_jacobi_failure_has_witness():
    with pytest.raises(JacobiError) as info:
        LieAlgebra(["a", "b", "c"], {(0, 1): [(1, 1)], (1, 2): [(0, 1)]})
    assert info.value.witness is not None


def test_antisymmetry_completion_and_rejection():
    g = LieAlgebra(["a", "b"], {(0, 1): [(1, 1)]})
    assert g.structure_constant(1, 0, 1) == -1
    with pytest.raises(JacobiError):
        LieAlgebra(["a", "b"], {(0, 1): [(1, 1)], (1, 0): [(1, 1)]})


def test_degree_zero_coboundary_is_the_action():
    g = su2()
    rep = Representation.adjoint(g)
    p = [Scalar(1), Scalar(2), Scalar(3)]
    c = Cochain(rep, 0, {(): p})
    dc = ce_coboundary(c)
    for i in range(3):
        expected = [sum((rep.matrices[i][a][b] * p[b] for b in range(3)), Scalar(0)) for a in range(3)]
        assert dc(i) == expected


def test_degree_one_trivial_coboundary():
    g = su2()
    rep = Representation.trivial(g)
    c = Cochain(rep, 1, {(2,): [ONE]})
    # [e1, e2] = e3 so dc(e1, e2) = -c(e3)
    assert ce_coboundary(c)(0, 1) == [-ONE]
    assert ce_coboundary(c)(1, 0) == [ONE]


@pytest.mark.parametrize("name", sorted(LIE_LIBRARY))
def test_d_squared_zero(name, rng):
    g = LIE_LIBRARY[name]()
    for rep in (Representation.trivial(g), Representation.adjoint(g)):
        for k in range(min(g.dim, 4)):
            c = random_cochain(rep, k, rng)
            assert ce_coboundary(ce_coboundary(c)).is_zero()


def test_betti_su2():
    res = betti_table(Representation.trivial(su2()))
    assert res.betti == [1, 0, 0, 1] == betti_oracle(su2())


@pytest.mark.parametrize("n", range(1, 7))
def test_betti_abelian(n):
    assert betti_table(Representation.trivial(abelian(n))).betti == [comb(n, k) for k in range(n + 1)]


@pytest.mark.parametrize("name", ["heisenberg", "upper2", "upper3", "sl2", "su2+abelian1"])
def test_betti_against_oracle(name):
    g = LIE_LIBRARY[name]()
    assert betti_table(Representation.trivial(g), representatives=False).betti == betti_oracle(g)


def test_betti_adjoint_against_oracle():
    g = heisenberg()
    rep = Representation.adjoint(g)
    assert betti_table(rep, representatives=False).betti == betti_oracle(g, rep.matrices)


def test_heisenberg_degree_one():
    assert betti_table(Representation.trivial(heisenberg())).betti[1] == 2


def test_degree_zero_trivial_always_one():
    for name, f in LIE_LIBRARY.items():
        assert betti_table(Representation.trivial(f()), max_degree=0).betti == [1], name


def test_representatives_are_independent_cocycles():
    rep = Representation.trivial(heisenberg())
    res = betti_table(rep)
    for k, cs in enumerate(res.representatives):
        assert len(cs) == res.betti[k]
        for c in cs:
            assert ce_coboundary(c).is_zero() if k < 3 else True
            assert not is_coboundary(c)


def test_cup_product_examples(rng):
    rep = Representation.trivial(abelian(2))
    t1, t2 = dual_basis_cochain(rep, 0), dual_basis_cochain(rep, 1)
    assert cup_product(t1, t2)(0, 1) == [ONE]
    one = unit_cochain(rep)
    for k in range(3):
        c = random_cochain(rep, k, rng)
        assert cup_product(c, one) == c == cup_product(one, c)


def test_cup_graded_commutative(rng):
    rep = Representation.trivial(abelian(4))
    for r in range(3):
        for s in range(3):
            a, b = random_cochain(rep, r, rng), random_cochain(rep, s, rng)
            assert cup_product(a, b) == (-1) ** (r * s) * cup_product(b, a)


def test_cup_respects_cohomology(rng):
    g = heisenberg()
    rep = Representation.trivial(g)
    res = betti_table(rep)
    cocycles = res.representatives[1]
    for a in cocycles:
        for b in cocycles:
            assert ce_coboundary(cup_product(a, b)).is_zero()
        exact = ce_coboundary(random_cochain(rep, 0, rng))
        b = ce_coboundary(random_cochain(rep, 1, rng))
        assert is_coboundary(cup_product(a, b))
    assert exact.is_zero()


def test_cup_leibniz(rng):
    g = LIE_LIBRARY["heisenberg+sl2"]()
    rep = Representation.trivial(g)
    for r in range(3):
        for s in range(3):
            a, b = random_cochain(rep, r, rng), random_cochain(rep, s, rng)
            lhs = ce_coboundary(cup_product(a, b))
            rhs = cup_product(ce_coboundary(a), b) + (-1) ** r * cup_product(a, ce_coboundary(b))
            assert lhs == rhs


def test_cup_needs_product_for_vector_coefficients():
    rep = Representation.adjoint(su2())
    c = Cochain(rep, 0, {(): [1, 0, 0]})
    with pytest.raises(ValueError):
        cup_product(c, c)


def test_maurer_cartan():
    for name, f in LIE_LIBRARY.items():
        assert maurer_cartan_check(f()) == [], name
    g = su2()
    rep = Representation.trivial(g)
    t = [dual_basis_cochain(rep, k) for k in range(3)]
    assert ce_coboundary(t[0]) == -cup_product(t[1], t[2])
    assert all(ce_coboundary(x).is_zero() for x in (dual_basis_cochain(Representation.trivial(abelian(3)), k)
                                                     for k in range(3)))


def test_poincare_duality_su2():
    b = betti_table(Representation.trivial(su2())).betti
    assert b == b[::-1]


@given(st.integers(1, 3), st.integers(1, 3))
def test_direct_sum_betti_is_kunneth(a, b):
    g = direct_sum(abelian(a), heisenberg())
    bg = betti_table(Representation.trivial(g), representatives=False).betti
    ba = [comb(a, k) for k in range(a + 1)]
    bh = [1, 2, 2, 1]
    kun = [sum(ba[i] * bh[k - i] for i in range(len(ba)) if 0 <= k - i < 4) for k in range(a + 4)]
    assert bg == kun
