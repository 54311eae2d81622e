import pytest

from algcalc.algebra import (AlgebraElement, direct_product, group_algebra, ground_field, matrix_algebra,
                             truncated_polynomial, unital_extension, derivations)
from algcalc.groups import cyclic_group
from algcalc.ncdiff import (BasisNotClosed, DerivationCalculus, UniversalCalculus, ce_d, matrix_geometry,
                            maurer_cartan_matrix, universal_cohomology, universal_d, wedge)
from algcalc.scalar import ONE, ZERO, Scalar

from conftest import rand_vec
from oracles import universal_dims_oracle

ALGEBRAS = {
    "qx2": lambda: truncated_polynomial(2),
    "qx3": lambda: truncated_polynomial(3),
    "QxQ": lambda: direct_product(ground_field(), ground_field()),
    "m2": lambda: matrix_algebra(2),
    "cz3": lambda: group_algebra(cyclic_group(3)),
}


def rand_form(calc, k, rng):
    return calc.form(k, {key: rng.randint(-2, 2) for key in calc.keys(k) if rng.random() < 0.5})


def tensor_oracle(alg, w):
    """Image of a 1-form in A (x) A under a0 da1 -> a0 (x) a1 - a0 a1 (x) 1."""
    n = alg.dim
    out = [[ZERO] * n for _ in range(n)]
    unit = alg.unit
    for (i0, i1), c in w.terms.items():
        out[i0][i1] += c
        prod = alg.mul_vec(alg.basis_vector(i0), alg.basis_vector(i1))
        for p in range(n):
            for u in range(n):
                out[p][u] -= c * prod[p] * unit[u]
    return out


def outer(a, b):
    return [[x * y for y in b] for x in a]


def sub(A, B):
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_universal_d_squared_and_leibniz(name, rng):
    alg = ALGEBRAS[name]()
    calc = UniversalCalculus(alg, max_degree=3)
    assert universal_d(calc.function(alg.unit)).is_zero()
    for k in range(2):
        for _ in range(5):
            w = rand_form(calc, k, rng)
            assert universal_d(universal_d(w)).is_zero()
    for _ in range(10):
        a, b = rand_vec(rng, alg.dim), rand_vec(rng, alg.dim)
        fa, fb = calc.function(a), calc.function(b)
        lhs = universal_d(calc.function(alg.mul_vec(a, b)))
        assert lhs == universal_d(fa) * fb + fa * universal_d(fb)
    for r in range(2):
        for s in range(2):
            if r + s + 1 > 3:
                continue
            w, v = rand_form(calc, r, rng), rand_form(calc, s, rng)
            assert universal_d(w * v) == universal_d(w) * v + (-1) ** r * (w * universal_d(v))


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_universal_degree_one_against_tensor_model(name, rng):
    alg = ALGEBRAS[name]()
    calc = UniversalCalculus(alg, max_degree=2)
    for k in range(3):
        assert calc.dimension(k) == universal_dims_oracle(alg, k)
    one = alg.unit
    for _ in range(10):
        a, b = rand_vec(rng, alg.dim), rand_vec(rng, alg.dim)
        fa, fb = calc.function(a), calc.function(b)
        ab = alg.mul_vec(a, b)
        assert tensor_oracle(alg, fa * universal_d(fb)) == sub(outer(a, b), outer(ab, one))
        assert tensor_oracle(alg, universal_d(fa) * fb) == sub(outer(one, ab), outer(a, b))


def test_dx_times_x_is_not_zero():
    alg = truncated_polynomial(2)
    calc = UniversalCalculus(alg)
    x = calc.function(alg["x"])
    dx = universal_d(x)
    assert not (dx * x).is_zero()
    assert (dx * x + x * dx).is_zero()
    assert universal_d(x * x).is_zero()


@pytest.mark.parametrize("name", ["qx2", "QxQ", "qx3", "cz3"])
def test_universal_acyclic(name):
    alg = ALGEBRAS[name]()
    assert universal_cohomology(alg) == [1, 0, 0]
    assert universal_cohomology(unital_extension(alg)) == [1, 0, 0]


def test_degree_cap():
    calc = UniversalCalculus(truncated_polynomial(2), max_degree=1)
    with pytest.raises(ValueError):
        universal_d(universal_d(calc.function(truncated_polynomial(2)["x"])))


def m2_calc():
    geo = matrix_geometry(2)
    return geo, geo.calc


def rand_ce_form(calc, k, rng):
    from itertools import combinations
    return calc.form(k, {key: rand_vec(rng, calc.algebra.dim) for key in combinations(range(calc.rank), k)
                         if rng.random() < 0.7})


def test_ce_degree_zero_and_d_squared(rng):
    geo, calc = m2_calc()
    assert ce_d(calc.one()).is_zero()
    for _ in range(5):
        a = AlgebraElement(calc.algebra, rand_vec(rng, 4))
        da = ce_d(calc.function(a))
        for r, u in enumerate(calc.derivations):
            assert calc.value(da, r) == u(a)
    for k in range(3):
        phi = rand_ce_form(calc, k, rng)
        assert ce_d(ce_d(phi)).is_zero()


def test_ce_leibniz(rng):
    geo, calc = m2_calc()
    for r in range(3):
        for s in range(3 - r + 1):
            if r + s > 2:
                continue
            phi, psi = rand_ce_form(calc, r, rng), rand_ce_form(calc, s, rng)
            lhs = ce_d(wedge(phi, psi))
            assert lhs == wedge(ce_d(phi), psi) + (-1) ** r * wedge(phi, ce_d(psi))


def test_wedge_examples(rng):
    geo, calc = m2_calc()
    t = [calc.theta(r) for r in range(3)]
    assert wedge(t[0], t[1]) == -wedge(t[1], t[0])
    phi = rand_ce_form(calc, 2, rng)
    assert wedge(phi, calc.one()) == phi
    A = calc.algebra
    a, b = A["E12"], A["E21"]
    w = wedge(calc.times(a, t[0]), calc.times(b, t[1]))
    assert calc.value(w, 0, 1) == a * b
    assert a * b != b * a


def test_wedge_commutative_case(rng):
    alg = truncated_polynomial(3)
    calc = DerivationCalculus(alg, derivations(alg))
    for r in range(3):
        for s in range(3):
            phi, psi = rand_ce_form(calc, r, rng), rand_ce_form(calc, s, rng)
            if r + s <= calc.rank:
                assert wedge(phi, psi) == (-1) ** (r * s) * wedge(psi, phi)


def test_basis_not_closed():
    alg = matrix_algebra(2)
    from algcalc.algebra import inner_derivation
    us = [inner_derivation(alg["E12"]), inner_derivation(alg["E21"])]
    with pytest.raises(BasisNotClosed):
        DerivationCalculus(alg, us)


def test_levi_civita_n2():
    geo = matrix_geometry(2)
    eps = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (2, 1, 0): -1, (0, 2, 1): -1}
    for r in range(3):
        for q in range(3):
            for s in range(3):
                assert geo.structure_constant(r, q, s) == -eps.get((r, q, s), 0)


@pytest.mark.parametrize("n", [2, 3])
def test_matrix_geometry(n, rng):
    geo = matrix_geometry(n)
    assert geo.dim == n * n - 1
    assert geo.dual_basis_violation() is None
    assert geo.theta_centrality_violation() is None
    assert geo.d_epsilon_residuals() == []
    assert maurer_cartan_matrix(geo) == []
    for r in range(geo.dim):
        assert ce_d(ce_d(geo.theta(r))).is_zero()
    for _ in range(10):
        assert geo.da_residual(rand_vec(rng, n * n)).is_zero()
    c = geo.structure_constants()
    N = geo.dim
    for r in range(N):
        for q in range(N):
            for s in range(N):
                assert c[r][q][s] == -c[q][r][s]
                assert c[r][q][s].is_real()


def test_maurer_cartan_n2_explicit():
    geo = matrix_geometry(2)
    t = [geo.theta(r) for r in range(3)]
    assert ce_d(t[0]) - wedge(t[1], t[2]) == geo.calc.form(2, {})


def test_user_basis_rejected_when_not_closed():
    z = [[ZERO, ZERO], [ZERO, ZERO]]
    bad = [[[ONE, ZERO], [ZERO, -ONE]], [[ZERO, ONE], [ZERO, ZERO]], [[ZERO, ONE], [ZERO, ZERO]]]
    with pytest.raises(ValueError):
        matrix_geometry(2, bad)
