"""Acceptance criteria 1-9, each at its stated tolerance (exact) and runtime bound.

Every criterion records one PASS/FAIL line, printed in the pytest terminal
summary; ``python tests/test_acceptance.py`` prints the same lines standalone.
"""

import os
import random
import sys
import time
from itertools import combinations
from math import comb

import pytest

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from algcalc.algebra import (Derivation, derivations, direct_product, ground_field, matrix_algebra,
                             truncated_polynomial, unital_extension)
from algcalc.cli import run
from algcalc.connections import (DVConnection, KoszulConnection, LinearConnectionMn, classify_order,
                                 dv_check_and_curvature, free_bimodule, jet_module_1, koszul_curvature,
                                 mn_torsion, torsion_free_solutions)
from algcalc.graded import SUPER_LIBRARY, SuperCochain, SuperRepresentation, super_ce_coboundary, super_tuples
from algcalc.groups import cyclic_group, symmetric_group
from algcalc.hopf import (RMatrix, adjoint_action, dual_pairing_check, evaluation_pairing, function_hopf,
                          group_hopf, qybe_check, uq_bplus, verify_hopf)
from algcalc.lie import LIE_LIBRARY, Cochain, Representation, abelian, betti_table, ce_coboundary, heisenberg, su2
from algcalc.linalg import mat_mul, mat_vec, span_rank
from algcalc.ncdiff import UniversalCalculus, ce_d, matrix_geometry, maurer_cartan_matrix, universal_cohomology, universal_d
from algcalc.scalar import Scalar, ZERO

from golden_cases import CASES, golden_path
from oracles import betti_oracle, jet_dims_oracle

from conftest import SEED

RESULTS = {}


def rs(rng):
    return Scalar(rng.randint(-3, 3), rng.randint(-3, 3))


def rvec(rng, n):
    return [rs(rng) for _ in range(n)]


def record(number, title, failures, elapsed=None, limit=None):
    if limit is not None and elapsed > limit:
        failures = list(failures) + [f"runtime {elapsed:.2f}s exceeds {limit}s"]
    ok = not failures
    timing = f" [{elapsed:.2f}s]" if elapsed is not None else ""
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} {title}{timing}"
    if failures:
        line += " -- " + "; ".join(failures)
    RESULTS[number] = line
    return ok, failures


# 1 -------------------------------------------------------------------------------------

def criterion_1():
    t = time.perf_counter()
    g = su2()
    betti = betti_table(Representation.trivial(g), representatives=False).betti
    oracle = betti_oracle(g)
    elapsed = time.perf_counter() - t
    failures = []
    if betti != [1, 0, 0, 1]:
        failures.append(f"betti {betti}")
    if betti[1:3] != [0, 0]:
        failures.append("degrees 1-2 not zero")
    if [betti[0], betti[3]] != [oracle[0], oracle[3]]:
        failures.append(f"oracle {oracle}")
    return record(1, "su(2) trivial-coefficient Betti numbers (1, 0, 0, 1)", failures, elapsed, 1)


# 2 -------------------------------------------------------------------------------------

def criterion_2():
    t = time.perf_counter()
    failures = []
    for n in range(1, 7):
        b = betti_table(Representation.trivial(abelian(n)), representatives=False).betti
        if b != [comb(n, k) for k in range(n + 1)]:
            failures.append(f"abelian{n}: {b}")
    h = betti_table(Representation.trivial(heisenberg()), representatives=False).betti
    oracle = betti_oracle(heisenberg())
    if h[1] != 2 or oracle[1] != 2:
        failures.append(f"heisenberg degree 1: {h[1]} (oracle {oracle[1]})")
    elapsed = time.perf_counter() - t
    return record(2, "abelian n<=6 binomial Betti numbers, Heisenberg b1 = 2", failures, elapsed, 5)


# 3 -------------------------------------------------------------------------------------

def criterion_3():
    rng = random.Random(SEED)
    failures = []
    names = ["su2", "heisenberg", "sl2", "upper3", "heisenberg+sl2"]
    for i in range(200):
        g = LIE_LIBRARY[names[i % 5]]()
        rep = Representation.adjoint(g) if i % 2 else Representation.trivial(g)
        k = rng.randint(0, min(g.dim - 2, 3))
        comps = {key: rvec(rng, rep.module_dim) for key in combinations(range(g.dim), k) if rng.random() < 0.6}
        c = Cochain(rep, k, comps)
        if not ce_coboundary(ce_coboundary(c)).is_zero():
            failures.append(f"CE d^2 on {names[i % 5]} degree {k}")
    supers = sorted(SUPER_LIBRARY)
    for i in range(100):
        lie = SUPER_LIBRARY[supers[i % len(supers)]]()
        rep = SuperRepresentation.adjoint(lie) if i % 2 else SuperRepresentation.trivial(lie)
        k = rng.randint(0, 2)
        comps = {key: [Scalar(rng.randint(-3, 3)) for _ in range(rep.module_dim)]
                 for key in super_tuples(lie, k) if rng.random() < 0.6}
        c = SuperCochain(rep, k, comps)
        if not super_ce_coboundary(super_ce_coboundary(c)).is_zero():
            failures.append(f"super d^2 on {supers[i % len(supers)]} degree {k}")
    algebras = [truncated_polynomial(3), matrix_algebra(2), direct_product(ground_field(), ground_field())]
    calcs = [UniversalCalculus(a, max_degree=3) for a in algebras]
    for i in range(100):
        calc = calcs[i % 3]
        k = rng.randint(0, 1)
        w = calc.form(k, {key: rs(rng) for key in calc.keys(k) if rng.random() < 0.5})
        if not universal_d(universal_d(w)).is_zero():
            failures.append(f"universal d^2 degree {k}")
    geo = matrix_geometry(2)
    qcalc_alg = truncated_polynomial(3)
    from algcalc.ncdiff import DerivationCalculus
    dcalcs = [geo.calc, DerivationCalculus(qcalc_alg, derivations(qcalc_alg))]
    for i in range(100):
        calc = dcalcs[i % 2]
        k = rng.randint(0, calc.rank - 1)
        comps = {key: rvec(rng, calc.algebra.dim) for key in combinations(range(calc.rank), k)
                 if rng.random() < 0.6}
        phi = calc.form(k, comps)
        if not ce_d(ce_d(phi)).is_zero():
            failures.append(f"derivation-form d^2 degree {k}")
    return record(3, "d o d = 0: 200 CE, 100 super CE, 100 universal, 100 derivation-based forms", failures)


# 4 -------------------------------------------------------------------------------------

def criterion_4():
    rng = random.Random(SEED)
    failures = []
    for n in (2, 3):
        t = time.perf_counter()
        geo = matrix_geometry(n)
        N = geo.dim
        c = geo.structure_constants()
        if maurer_cartan_matrix(geo):
            failures.append(f"n={n}: Maurer-Cartan residuals")
        if geo.d_epsilon_residuals():
            failures.append(f"n={n}: d eps residuals")
        for _ in range(20):
            if not geo.da_residual(rvec(rng, n * n)).is_zero():
                failures.append(f"n={n}: da != a theta - theta a")
                break
        T = mn_torsion(LinearConnectionMn.flat(geo))
        if any(T[p][r][q] != -c[r][q][p] for p in range(N) for r in range(N) for q in range(N)):
            failures.append(f"n={n}: flat torsion != -c")
        T = mn_torsion(LinearConnectionMn.scaled_structure(geo, -1))
        nonzero = sum(1 for A in T for row in A for x in row if x)
        if nonzero:
            failures.append(f"n={n}: omega = -c has {nonzero} nonzero torsion entries (T = +c)")
        _, kernel = torsion_free_solutions(geo)
        if kernel:
            failures.append(f"n={n}: T = 0 solution space has dimension {len(kernel)}, not 0")
        elapsed = time.perf_counter() - t
        if n == 3 and elapsed > 10:
            failures.append(f"n=3 runtime {elapsed:.2f}s exceeds 10s")
    return record(4, "matrix geometry n=2,3: Maurer-Cartan, d eps, da, flat torsion, omega=-c torsion-free and unique",
                  failures)


# 5 -------------------------------------------------------------------------------------

def _is_zero(m):
    return not any(x for row in m for x in row)


def criterion_5():
    rng = random.Random(SEED)
    failures = []
    alg = truncated_polynomial(3)
    us = derivations(alg)
    K = KoszulConnection(alg, 1, us)
    if K.leibniz_violation() is not None:
        failures.append("canonical Koszul connection fails Leibniz")
    if any(not _is_zero(koszul_curvature(K, u, v)) for u in us for v in us):
        failures.append("canonical Koszul curvature nonzero")
    m2 = matrix_algebra(2)
    D = DVConnection.inner(free_bimodule(m2, 1), [m2["E12"], m2["E21"], m2["E11"]])
    for u in D.derivations:
        for v in D.derivations:
            rep = dv_check_and_curvature(D, u, v)
            if not rep.valid or not _is_zero(rep.curvature):
                failures.append("inner DV connection not flat")
    Kr = KoszulConnection(alg, 2, us, [[[[Scalar(rng.randint(-2, 2)) for _ in range(3)] for _ in range(2)]
                                        for _ in range(2)] for _ in us])
    for _ in range(50):
        a, b = [[Scalar(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
        u = Derivation(alg, [[a[0] * x + a[1] * y for x, y in zip(r0, r1)]
                             for r0, r1 in zip(us[0].matrix, us[1].matrix)], check=False)
        v = Derivation(alg, [[b[0] * x + b[1] * y for x, y in zip(r0, r1)]
                             for r0, r1 in zip(us[0].matrix, us[1].matrix)], check=False)
        R, Rt = koszul_curvature(Kr, u, v), koszul_curvature(Kr, v, u)
        if R != [[-x for x in row] for row in Rt]:
            failures.append("curvature not antisymmetric")
            break
    P = free_bimodule(alg, 1)
    euler = Derivation(alg, [[Scalar(i) if i == j else ZERO for j in range(3)] for i in range(3)])
    orders = (classify_order(alg.left_mul_matrix(alg["x"].coords), P), classify_order(euler.matrix, P),
              classify_order(mat_mul(euler.matrix, euler.matrix), P))
    if orders != (0, 1, 2):
        failures.append(f"classify_order gave {orders}")
    return record(5, "canonical Koszul and inner DV curvature zero, antisymmetry, orders 0/1/2", failures)


# 6 -------------------------------------------------------------------------------------

def criterion_6():
    failures = []
    for n in range(2, 6):
        alg = truncated_polynomial(n)
        J = jet_module_1(alg)
        jet, o1 = jet_dims_oracle(n)
        if J.kernel_dim() != n - 1 or o1 != n - 1 or J.dim != jet:
            failures.append(f"n={n}: dims {J.dim}/{J.kernel_dim()} oracle {jet}/{o1}")
        if span_rank(J.pi10()) != J.P.dim:
            failures.append(f"n={n}: pi10 not surjective")
        d1 = J.d1()
        for i in range(n):
            for j in range(n):
                a, b = alg.basis_vector(i), alg.basis_vector(j)
                lhs = mat_vec(d1, alg.mul_vec(a, b))
                rhs = [x + y for x, y in zip(mat_vec(J.left_action(a), mat_vec(d1, b)),
                                             mat_vec(J.left_action(b), mat_vec(d1, a)))]
                if lhs != rhs:
                    failures.append(f"n={n}: d1 Leibniz fails at ({i}, {j})")
        if J.dim != J.P.dim + J.kernel_dim():
            failures.append(f"n={n}: dim J1 != dim P + dim O1(x)P")
        gamma = [J.tensor(alg.unit, [1] + [0] * (n - 1))]
        nabla = J.connection_from_splitting(gamma)
        G = J.splitting_matrix(gamma)
        if [[x + y for x, y in zip(r, s)] for r, s in zip(G, nabla)] != J.J1():
            failures.append(f"n={n}: J1 != Gamma + nabla")
    return record(6, "jet modules: dim O1 = n-1 (n=2..5), pi10 onto, d1 Leibniz, splitting identity", failures)


# 7 -------------------------------------------------------------------------------------

def criterion_7():
    t = time.perf_counter()
    failures = []
    S3 = symmetric_group(3)
    inst = {"CZ2": group_hopf(cyclic_group(2)), "CZ3": group_hopf(cyclic_group(3)),
            "CS3": group_hopf(S3), "C(S3)": function_hopf(S3)}
    for name, h in inst.items():
        rep = verify_hopf(h)
        if not rep.passed:
            failures.append(f"{name}: {[l.name for l in rep.failed()]}")
        if h.is_cocommutative() and not h.antipode_squared_is_identity():
            failures.append(f"{name}: S^2 != Id")
    h, f = inst["CS3"], inst["C(S3)"]
    for x in range(6):
        for y in range(6):
            if adjoint_action(h, h.basis(x), h.basis(y)) != h.basis(S3.mul(S3.mul(x, y), S3.inv(x))):
                failures.append("CS3 adjoint action is not conjugation")
            if adjoint_action(f, f.basis(x), f.basis(y)) != [f.eps(f.basis(x)) * c for c in f.basis(y)]:
                failures.append("C(S3) adjoint action is not trivial")
    for G in (cyclic_group(2), cyclic_group(3), S3):
        A, B = group_hopf(G), function_hopf(G)
        rep = dual_pairing_check(A, B, evaluation_pairing(A, B))
        if not rep.passed:
            failures.append(f"pairing order {G.order}: {[l.name for l in rep.failed()]}")
    for name in ("CZ2", "CZ3", "CS3"):
        if not qybe_check(RMatrix.identity(inst[name]), inst[name]).passed:
            failures.append(f"{name}: R = 1 (x) 1 fails")
    uq = uq_bplus(2, degree_cap=6).verify()
    for law in ("relations", "coproduct respects relations", "antipode"):
        if not uq.law(law).passed:
            failures.append(f"U_q(b+): {law}")
    elapsed = time.perf_counter() - t
    return record(7, "Hopf suite: axioms, S^2, adjoint actions, pairings, QYBE, U_q(b+) at q=2 to cap 6",
                  failures, elapsed, 10)


# 8 -------------------------------------------------------------------------------------

def criterion_8():
    failures = []
    for name, alg in (("Q[x]/(x^2)", truncated_polynomial(2)),
                      ("QxQ", direct_product(ground_field(), ground_field()))):
        h = universal_cohomology(unital_extension(alg), max_degree=2)
        if h != [1, 0, 0]:
            failures.append(f"{name}: {h}")
    return record(8, "universal calculus: H0 = K, H1 = H2 = 0", failures)


# 9 -------------------------------------------------------------------------------------

def criterion_9():
    from test_io_cli import SHIPPED, file_text, reserialize
    failures = []
    for name, (argv, code) in CASES.items():
        first, second = run(argv), run(argv)
        with open(golden_path(name), encoding="utf-8", newline="") as fh:
            golden = fh.read()
        if first != second or first[1] != golden or first[0] != code:
            failures.append(f"golden {name}")
    for name in SHIPPED:
        if reserialize(name) != file_text(name):
            failures.append(f"round trip {name}")
    return record(9, f"CLI determinism on {len(CASES)} goldens and round trip on {len(SHIPPED)} files", failures)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number):
    ok, failures = CRITERIA[number - 1]()
    assert ok, "; ".join(failures)


if __name__ == "__main__":
    for crit in CRITERIA:
        crit()
    for k in sorted(RESULTS):
        print(RESULTS[k])
