"""Jet modules, differential-operator order, and connections.

Modules are finite-dimensional over the ground field and carry left (and for
bimodules right) actions of the algebra, given by one matrix per algebra basis
element.  Linear maps between modules are dense matrices acting on coordinate
columns.  Every Leibniz-type certificate below is checked on basis elements,
which suffices because the conditions are multilinear.
"""

from dataclasses import dataclass

from .scalar import ZERO, ONE, as_scalar
from .linalg import (identity, mat_mul, mat_vec, rref, sparse_nullspace, span_rank, coordinates_in,
                     transpose)
from .algebra import AlgebraElement, Derivation, bracket, derivation_coordinates, derivations

__all__ = [
    "Bimodule",
    "free_bimodule",
    "EXCEEDS_MAX",
    "classify_order",
    "order_space",
    "lunts_filtration",
    "decompose_first_order",
    "JetModule1",
    "jet_module_1",
    "KoszulConnection",
    "koszul_curvature",
    "DVConnection",
    "dv_check_and_curvature",
    "LinearConnectionMn",
    "mn_torsion",
    "mn_curvature",
    "torsion_free_solutions",
    "bimodule_first_order_violation",
    "is_module_morphism",
    "DVReport",
]

EXCEEDS_MAX = "exceeds max"


def _madd(a, b, s=1):
    return [[x + s * y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def _zero_mat(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def _flat(m):
    return [x for row in m for x in row]


def _unflat(v, rows, cols):
    return [list(v[i * cols:(i + 1) * cols]) for i in range(rows)]


class Bimodule:
    """Finite-dimensional module over an algebra.

    ``left[i]`` is the matrix of p -> e_i p; ``right[i]`` (optional) that of
    p -> p e_i.
    """

    def __init__(self, algebra, left, right=None, name=None):
        self.algebra = algebra
        self.left = [[[as_scalar(x) for x in row] for row in m] for m in left]
        self.right = None if right is None else [[[as_scalar(x) for x in row] for row in m] for m in right]
        self.dim = len(self.left[0]) if self.left else 0
        self.name = name
        if len(self.left) != algebra.dim or (self.right is not None and len(self.right) != algebra.dim):
            raise ValueError("need one action matrix per algebra basis element")

    @property
    def is_bimodule(self):
        return self.right is not None

    def left_matrix(self, a):
        v = a.coords if isinstance(a, AlgebraElement) else a
        out = _zero_mat(self.dim, self.dim)
        for i, c in enumerate(v):
            if c:
                out = _madd(out, [[c * x for x in row] for row in self.left[i]])
        return out

    def right_matrix(self, a):
        v = a.coords if isinstance(a, AlgebraElement) else a
        out = _zero_mat(self.dim, self.dim)
        for i, c in enumerate(v):
            if c:
                out = _madd(out, [[c * x for x in row] for row in self.right[i]])
        return out


def free_bimodule(algebra, rank):
    """A^rank with componentwise left and right multiplication.

    Coordinates: index k * dim(A) + i is the e_i coefficient of component k.
    """
    n = algebra.dim
    d = n * rank

    def block(m):
        out = _zero_mat(d, d)
        for k in range(rank):
            for a in range(n):
                for b in range(n):
                    if m[a][b]:
                        out[k * n + a][k * n + b] = m[a][b]
        return out

    left = [block(algebra.left_mul_matrix(algebra.basis_vector(i))) for i in range(n)]
    right = [block(algebra.right_mul_matrix(algebra.basis_vector(i))) for i in range(n)]
    return Bimodule(algebra, left, right, name=f"{algebra.name or 'A'}^{rank}")


# differential operator order ---------------------------------------------------------

def _delta(op, P, Q, i):
    """delta_{e_i} op = e_i op - op e_i (left actions)."""
    return _madd(mat_mul(Q.left[i], op), mat_mul(op, P.left[i]), -1)


def _reduce_basis(mats, rows, cols):
    """Row-reduced basis of the span of a list of matrices (flattened), as matrices."""
    vecs = [_flat(m) for m in mats if any(x for row in m for x in row)]
    if not vecs:
        return []
    red, piv = rref(vecs)
    return [_unflat(red[r], rows, cols) for r in range(len(piv))]


def classify_order(op, P, Q=None, max_order=4, branch="commutative"):
    """Least order s of a linear map op: P -> Q, or EXCEEDS_MAX.

    Branches:
      * "commutative": least s with delta_{a_0} ... delta_{a_s} op = 0 for all
        basis tuples, delta_a op = a op - op a;
      * "lunts": least r with op in the r-th term of the filtration built from
        iterated centers of Hom(P, Q) (see :func:`lunts_filtration`);
      * "bimodule": 0 for bimodule morphisms, 1 for maps satisfying
        a op(p) b - a op(pb) - op(ap) b + op(apb) = 0; nothing higher is defined.
    """
    Q = Q or P
    if branch == "commutative":
        if not P.algebra.is_commutative():
            raise ValueError("the commutative branch needs a commutative algebra")
        span = _reduce_basis([op], Q.dim, P.dim)
        for s in range(max_order + 1):
            nxt = []
            for m in span:
                for i in range(P.algebra.dim):
                    nxt.append(_delta(m, P, Q, i))
            span = _reduce_basis(nxt, Q.dim, P.dim)
            if not span:
                return s
        return EXCEEDS_MAX
    if branch == "lunts":
        levels = lunts_filtration(P, Q, max_order)
        v = _flat(op)
        for r, basis in enumerate(levels):
            if coordinates_in(basis, v) is not None:
                return r
        return EXCEEDS_MAX
    if branch == "bimodule":
        if not (P.is_bimodule and Q.is_bimodule):
            raise ValueError("the bimodule branch needs bimodules")
        if _bimodule_morphism_violation(op, P, Q) is None:
            return 0
        if max_order >= 1 and bimodule_first_order_violation(op, P, Q) is None:
            return 1
        return EXCEEDS_MAX
    raise ValueError(f"unknown branch {branch!r}")


def _bimodule_morphism_violation(op, P, Q):
    for i in range(P.algebra.dim):
        if mat_mul(Q.left[i], op) != mat_mul(op, P.left[i]):
            return ("left", i)
        if mat_mul(Q.right[i], op) != mat_mul(op, P.right[i]):
            return ("right", i)
    return None


def bimodule_first_order_violation(op, P, Q):
    """First (a, b) basis pair where a op(p) b - a op(pb) - op(ap) b + op(apb) != 0."""
    n = P.algebra.dim
    for a in range(n):
        for b in range(n):
            t1 = mat_mul(Q.left[a], mat_mul(Q.right[b], op))
            t2 = mat_mul(Q.left[a], mat_mul(op, P.right[b]))
            t3 = mat_mul(Q.right[b], mat_mul(op, P.left[a]))
            t4 = mat_mul(op, mat_mul(P.left[a], P.right[b]))
            total = _madd(_madd(_madd(t1, t2, -1), t3, -1), t4)
            if any(x for row in total for x in row):
                return (a, b)
    return None


def order_space(P, Q, s):
    """Basis (flattened matrices) of all operators P -> Q of order <= s (commutative branch).

    Built as iterated preimages: Diff_s = {X : delta_a X in Diff_(s-1) for all a}.
    """
    Q = Q or P
    current = []
    for _ in range(s + 1):
        current = _delta_preimage(P, Q, current)
    return current


def _delta_preimage(P, Q, subspace):
    """Basis of {X in Hom(P, Q) : delta_{e_i} X in span(subspace) for every i}."""
    n = P.algebra.dim
    rows, cols = Q.dim, P.dim
    D = rows * cols
    red, piv = rref(subspace) if subspace else ([], [])
    pivset = set(piv)
    free = [j for j in range(D) if j not in pivset]
    if not free:
        return [_unit_vec(D, j) for j in range(D)]

    def reduce_mod(v):
        for r, pc in enumerate(piv):
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, red[r])]
        return v

    srows = [dict() for _ in range(n * len(free))]
    for j in range(D):
        m = _unflat(_unit_vec(D, j), rows, cols)
        for i in range(n):
            dv = reduce_mod(_flat(_delta(m, P, Q, i)))
            for t, f in enumerate(free):
                if dv[f]:
                    srows[i * len(free) + t][j] = dv[f]
    return sparse_nullspace(srows, D)


def decompose_first_order(op, algebra):
    """Split a first-order operator on A into (op(1), op - op(1)) with the second a derivation.

    Returns (AlgebraElement, Derivation); raises ValueError if the remainder is
    not a derivation.
    """
    one = list(algebra.unit)
    a = AlgebraElement(algebra, mat_vec(op, one))
    rest = _madd(op, algebra.left_mul_matrix(a.coords), -1)
    return a, Derivation(algebra, rest, check=True)


def lunts_filtration(P, Q=None, max_order=4):
    """Bases of I_0 subset I_1 subset ... in Hom(P, Q).

    Z_r is the center of Hom(P, Q)/I_(r-1) under delta_a phi = a phi - phi a;
    I_r is the submodule generated by Z_r under phi -> a phi and phi -> phi a.
    Computed by exact linear algebra on the finite-dimensional Hom space.
    Stops early once the filtration stabilizes.
    """
    Q = Q or P
    current = []
    levels = []
    for _ in range(max_order + 1):
        center = _delta_preimage(P, Q, current)
        gen = _bimodule_closure([*current, *center], P, Q)
        levels.append(gen)
        if len(gen) == len(current):
            break
        current = gen
    return levels


def _bimodule_closure(vecs, P, Q):
    rows, cols = Q.dim, P.dim
    basis = _rowspace(vecs)
    while True:
        new = list(basis)
        for v in basis:
            m = _unflat(v, rows, cols)
            for i in range(P.algebra.dim):
                new.append(_flat(mat_mul(Q.left[i], m)))
                new.append(_flat(mat_mul(m, P.left[i])))
        nb = _rowspace(new)
        if len(nb) == len(basis):
            return nb
        basis = nb


def _rowspace(vecs):
    vecs = [v for v in vecs if any(v)]
    if not vecs:
        return []
    red, piv = rref(vecs)
    return [red[r] for r in range(len(piv))]


# jet modules ----------------------------------------------------------------------

class JetModule1:
    """First-order jets J^1(P) of a free module P = A^r over a commutative algebra.

    The carrier is (A (x) P) modulo the relations
        ab (x) p - b (x) ap - a (x) bp + 1 (x) abp,
    modelled as coordinates on the non-pivot columns of the row-reduced
    relation space.  Maps are matrices on those coordinates.
    """

    def __init__(self, algebra, rank):
        if not algebra.is_commutative():
            raise ValueError("jet modules are implemented for commutative algebras")
        self.algebra = algebra
        self.rank = rank
        self.P = free_bimodule(algebra, rank)
        n, pd = algebra.dim, self.P.dim
        self.tensor_dim = T = n * pd
        rels = []
        for a in range(n):
            La = self.P.left[a]
            for b in range(n):
                Lb = self.P.left[b]
                ab = algebra.mul_vec(algebra.basis_vector(a), algebra.basis_vector(b))
                Lab = self.P.left_matrix(ab)
                for p in range(pd):
                    v = [ZERO] * T
                    for k, c in enumerate(ab):
                        if c:
                            v[k * pd + p] += c
                    for q in range(pd):
                        x = La[q][p]
                        if x:
                            v[b * pd + q] -= x
                        y = Lb[q][p]
                        if y:
                            v[a * pd + q] -= y
                    col = [Lab[q][p] for q in range(pd)]
                    for q, z in enumerate(col):
                        if z:
                            for m, u in enumerate(algebra.unit):
                                if u:
                                    v[m * pd + q] += u * z
                    if any(v):
                        rels.append(v)
        if rels:
            red, piv = rref(rels)
            self._red = [red[r] for r in range(len(piv))]
            self._piv = piv
        else:
            self._red, self._piv = [], []
        pset = set(self._piv)
        self._free = [j for j in range(T) if j not in pset]
        self.dim = len(self._free)

    # coordinates
    def reduce(self, v):
        """Quotient coordinates of a vector of A (x) P."""
        v = list(v)
        for r, pc in enumerate(self._piv):
            f = v[pc]
            if f:
                v = [x - f * y for x, y in zip(v, self._red[r])]
        return [v[j] for j in self._free]

    def lift(self, w):
        """A representative in A (x) P of quotient coordinates w."""
        v = [ZERO] * self.tensor_dim
        for j, x in zip(self._free, w):
            v[j] = x
        return v

    def tensor(self, a, p):
        """Class of a (x) p."""
        av = a.coords if isinstance(a, AlgebraElement) else a
        pd = self.P.dim
        v = [ZERO] * self.tensor_dim
        for k, x in enumerate(av):
            if x:
                for q, y in enumerate(p):
                    if y:
                        v[k * pd + q] += x * y
        return self.reduce(v)

    def _map_from_basis(self, images, src_dim):
        cols = [images(j) for j in range(src_dim)]
        return transpose(cols, len(cols[0]) if cols else 0) if cols else []

    # structure maps
    def J1(self):
        """p -> 1 (x) p, as a dim x dim P matrix."""
        pd = self.P.dim
        return self._map_from_basis(lambda j: self.tensor(self.algebra.unit, _unit_vec(pd, j)), pd)

    def i1(self):
        """sum a_k f_k -> sum a_k (x) f_k for the free basis f_k."""
        n, pd = self.algebra.dim, self.P.dim

        def img(j):
            k, i = divmod(j, n)
            return self.tensor(self.algebra.basis_vector(i), _unit_vec(pd, k * n + self._unit_index()))
        if self._unit_index() is None:
            return self._i1_general()
        return self._map_from_basis(img, pd)

    def _unit_index(self):
        u = self.algebra.unit
        nz = [i for i, x in enumerate(u) if x]
        return nz[0] if len(nz) == 1 and u[nz[0]] == ONE else None

    def _i1_general(self):
        n, pd = self.algebra.dim, self.P.dim
        unit = self.algebra.unit

        def img(j):
            k, i = divmod(j, n)
            f = [ZERO] * pd
            for m, u in enumerate(unit):
                f[k * n + m] = u
            return self.tensor(self.algebra.basis_vector(i), f)
        return self._map_from_basis(img, pd)

    def pi10(self):
        """a (x) p -> ap, as a dim P x dim matrix (well defined on the quotient)."""
        pd = self.P.dim
        cols = []
        for w in range(self.dim):
            v = self.lift(_unit_vec(self.dim, w))
            out = [ZERO] * pd
            for k in range(self.algebra.dim):
                chunk = v[k * pd:(k + 1) * pd]
                if any(chunk):
                    out = [x + y for x, y in zip(out, mat_vec(self.P.left[k], chunk))]
            cols.append(out)
        return transpose(cols, pd) if cols else [[] for _ in range(pd)]

    def h1(self):
        """id - i1 pi10, the projection onto the kernel of pi10."""
        return _madd(identity(self.dim), mat_mul(self.i1(), self.pi10()), -1)

    def d1(self):
        """h1 J1: P -> O^1 (x) P; for P = A this is b -> 1 (x) b - b (x) 1."""
        return mat_mul(self.h1(), self.J1())

    def left_action(self, a):
        """b (a (x) p) = ba (x) p on quotient coordinates."""
        av = a.coords if isinstance(a, AlgebraElement) else a
        pd = self.P.dim
        La = self.algebra.left_mul_matrix(av)
        cols = []
        for w in range(self.dim):
            v = self.lift(_unit_vec(self.dim, w))
            out = [ZERO] * self.tensor_dim
            for k in range(self.algebra.dim):
                for q in range(pd):
                    x = v[k * pd + q]
                    if x:
                        for m in range(self.algebra.dim):
                            y = La[m][k]
                            if y:
                                out[m * pd + q] += x * y
            cols.append(self.reduce(out))
        return transpose(cols, self.dim) if cols else []

    def bullet_action(self, a):
        """b . (a (x) p) = a (x) bp on quotient coordinates."""
        av = a.coords if isinstance(a, AlgebraElement) else a
        pd = self.P.dim
        Lb = self.P.left_matrix(av)
        cols = []
        for w in range(self.dim):
            v = self.lift(_unit_vec(self.dim, w))
            out = [ZERO] * self.tensor_dim
            for k in range(self.algebra.dim):
                chunk = v[k * pd:(k + 1) * pd]
                if any(chunk):
                    img = mat_vec(Lb, chunk)
                    for q, y in enumerate(img):
                        out[k * pd + q] += y
            cols.append(self.reduce(out))
        return transpose(cols, self.dim) if cols else []

    def kernel_dim(self):
        """dim O^1 (x) P = dim ker pi10."""
        pi = self.pi10()
        return self.dim - (span_rank(pi) if pi and pi[0] else 0)

    def contraction(self, u):
        """phi_u: a (x) p -> -u(a) p, which sends d1(b) (x) p to u(b) p."""
        pd = self.P.dim
        cols = []
        for w in range(self.dim):
            v = self.lift(_unit_vec(self.dim, w))
            out = [ZERO] * pd
            for k in range(self.algebra.dim):
                chunk = v[k * pd:(k + 1) * pd]
                if any(chunk):
                    ua = u.apply_vec(self.algebra.basis_vector(k))
                    img = mat_vec(self.P.left_matrix(ua), chunk)
                    out = [x - y for x, y in zip(out, img)]
            cols.append(out)
        return transpose(cols, pd) if cols else []

    def connection_from_splitting(self, gamma_on_generators):
        """nabla = J1 - Gamma for the A-linear splitting Gamma fixed by its values on the free basis.

        ``gamma_on_generators[k]`` is Gamma(f_k) in jet coordinates; it must satisfy
        pi10 Gamma(f_k) = f_k.
        """
        Gamma = self.splitting_matrix(gamma_on_generators)
        return _madd(self.J1(), Gamma, -1)

    def splitting_matrix(self, gamma_on_generators):
        n, pd = self.algebra.dim, self.P.dim
        pi = self.pi10()
        cols = []
        for j in range(pd):
            k, i = divmod(j, n)
            g = gamma_on_generators[k]
            fk = [ZERO] * pd
            for m, u in enumerate(self.algebra.unit):
                fk[k * n + m] = u
            if mat_vec(pi, g) != fk:
                raise ValueError(f"Gamma(f_{k + 1}) does not project to f_{k + 1}")
            cols.append(mat_vec(self.left_action(self.algebra.basis_vector(i)), g))
        return transpose(cols, self.dim)

    def splitting_from_connection(self, nabla):
        """Gamma = J1 - nabla."""
        return _madd(self.J1(), nabla, -1)

    def koszul_leibniz_violation(self, nabla):
        """First (a, p) basis pair where nabla(ap) - a nabla(p) != d1(a) (x) p."""
        n, pd = self.algebra.dim, self.P.dim
        J = self.J1()
        for i in range(n):
            La_P = self.P.left[i]
            La_J = self.left_action(self.algebra.basis_vector(i))
            lhs = _madd(mat_mul(nabla, La_P), mat_mul(La_J, nabla), -1)
            rhs = _madd(mat_mul(J, La_P), mat_mul(La_J, J), -1)
            if lhs != rhs:
                return i
        return None


def _unit_vec(n, j):
    v = [ZERO] * n
    v[j] = ONE
    return v


def jet_module_1(algebra, module_rank=1):
    return JetModule1(algebra, module_rank)


# Koszul connections ---------------------------------------------------------------

class KoszulConnection:
    """nabla_alpha(sum a_k f_k) = sum u_alpha(a_k) f_k + a_k Gamma_alpha f_k on P = A^r.

    ``gammas[alpha][l][k]`` is the algebra element (coordinate vector) of the
    f_l component of Gamma_alpha f_k.
    """

    def __init__(self, algebra, rank, derivations, gammas=None):
        self.algebra = algebra
        self.rank = rank
        self.derivations = list(derivations)
        self.P = free_bimodule(algebra, rank)
        n = algebra.dim
        zero = [ZERO] * n
        if gammas is None:
            gammas = [[[zero] * rank for _ in range(rank)] for _ in self.derivations]
        if len(gammas) != len(self.derivations):
            raise ValueError("need one coefficient matrix per derivation")
        self.gammas = [[[list(g.coords if isinstance(g, AlgebraElement) else g) for g in row] for row in G]
                       for G in gammas]
        self.matrices = [self._matrix(a) for a in range(len(self.derivations))]

    def _matrix(self, alpha):
        n, r = self.algebra.dim, self.rank
        d = n * r
        u = self.derivations[alpha]
        m = _zero_mat(d, d)
        for k in range(r):
            for a in range(n):
                for b in range(n):
                    if u.matrix[a][b]:
                        m[k * n + a][k * n + b] += u.matrix[a][b]
        for l in range(r):
            for k in range(r):
                g = self.gammas[alpha][l][k]
                if any(g):
                    R = self.algebra.right_mul_matrix(g)
                    for a in range(n):
                        for b in range(n):
                            if R[a][b]:
                                m[l * n + a][k * n + b] += R[a][b]
        return m

    def nabla(self, u):
        """nabla_u for u in the span of the derivation basis (ground-field coefficients)."""
        coeffs = derivation_coordinates(self.derivations, u)
        if coeffs is None:
            raise ValueError("derivation is outside the span of the connection's basis")
        d = self.P.dim
        out = _zero_mat(d, d)
        for c, m in zip(coeffs, self.matrices):
            if c:
                out = _madd(out, [[c * x for x in row] for row in m])
        return out

    def leibniz_violation(self):
        """First (alpha, algebra basis i) where nabla(e_i p) != u(e_i) p + e_i nabla(p)."""
        for alpha, m in enumerate(self.matrices):
            u = self.derivations[alpha]
            for i in range(self.algebra.dim):
                lhs = _madd(mat_mul(m, self.P.left[i]), mat_mul(self.P.left[i], m), -1)
                rhs = self.P.left_matrix(u.apply_vec(self.algebra.basis_vector(i)))
                if lhs != rhs:
                    return (alpha, i)
        return None


def koszul_curvature(conn, u, v):
    """R(u, v) = [nabla_u, nabla_v] - nabla_[u,v], an A-linear endomorphism of P."""
    Nu, Nv = conn.nabla(u), conn.nabla(v)
    Nuv = conn.nabla(bracket(u, v))
    R = _madd(_madd(mat_mul(Nu, Nv), mat_mul(Nv, Nu), -1), Nuv, -1)
    return R


def is_module_morphism(op, P, Q=None):
    Q = Q or P
    return all(mat_mul(Q.left[i], op) == mat_mul(op, P.left[i]) for i in range(P.algebra.dim))


# Dubois-Violette connections ------------------------------------------------------

class DVConnection:
    """Bimodule connection: one matrix nabla_u on P for each derivation in a basis."""

    def __init__(self, P, derivations, matrices):
        if not P.is_bimodule:
            raise ValueError("Dubois-Violette connections act on bimodules")
        self.P = P
        self.algebra = P.algebra
        self.derivations = list(derivations)
        self.matrices = [[[as_scalar(x) for x in row] for row in m] for m in matrices]
        if len(self.matrices) != len(self.derivations):
            raise ValueError("need one matrix per derivation")

    @classmethod
    def canonical(cls, algebra, derivs=None):
        """nabla_u(a) = u(a) on P = A."""
        P = free_bimodule(algebra, 1)
        derivs = derivs if derivs is not None else derivations(algebra)
        return cls(P, derivs, [u.matrix for u in derivs])

    @classmethod
    def inner(cls, P, elements):
        """nabla_{ad b}(p) = bp - pb for the inner derivations ad b, b in ``elements``."""
        from .algebra import inner_derivation
        derivs = [inner_derivation(b) for b in elements]
        mats = [_madd(P.left_matrix(b), P.right_matrix(b), -1) for b in elements]
        return cls(P, derivs, mats)

    def nabla(self, u):
        coeffs = derivation_coordinates(self.derivations, u)
        if coeffs is None:
            raise ValueError("derivation is outside the span of the connection's basis")
        d = self.P.dim
        out = _zero_mat(d, d)
        for c, m in zip(coeffs, self.matrices):
            if c:
                out = _madd(out, [[c * x for x in row] for row in m])
        return out

    def leibniz_violation(self):
        """First (alpha, i, p, j) where nabla(e_i p e_j) != u(e_i) p e_j + e_i nabla(p) e_j + e_i p u(e_j)."""
        P, alg = self.P, self.algebra
        n = alg.dim
        for alpha, m in enumerate(self.matrices):
            u = self.derivations[alpha]
            for i in range(n):
                Lu = P.left_matrix(u.apply_vec(alg.basis_vector(i)))
                for j in range(n):
                    Ru = P.right_matrix(u.apply_vec(alg.basis_vector(j)))
                    LR = mat_mul(P.left[i], P.right[j])
                    lhs = mat_mul(m, LR)
                    rhs = _madd(_madd(mat_mul(Lu, P.right[j]), mat_mul(P.left[i], mat_mul(P.right[j], m))),
                                mat_mul(P.left[i], Ru))
                    if lhs != rhs:
                        for p in range(P.dim):
                            if [row[p] for row in lhs] != [row[p] for row in rhs]:
                                return (alpha, i, p, j)
        return None


@dataclass
class DVReport:
    valid: bool
    curvature: list
    witness: tuple = None
    bimodule_morphism: bool = True


def dv_check_and_curvature(conn, u, v):
    """Leibniz certificate and R_{u,v} = nabla_u nabla_v - nabla_v nabla_u - nabla_[u,v]."""
    w = conn.leibniz_violation()
    Nu, Nv = conn.nabla(u), conn.nabla(v)
    Nuv = conn.nabla(bracket(u, v))
    R = _madd(_madd(mat_mul(Nu, Nv), mat_mul(Nv, Nu), -1), Nuv, -1)
    morph = _bimodule_morphism_violation(R, conn.P, conn.P) is None
    return DVReport(w is None, R, w, morph)


# linear connections in matrix geometry ------------------------------------------------

class LinearConnectionMn:
    """nabla_r(theta^p) = omega^p_rq theta^q with scalar coefficients.

    ``omega[p][r][q]`` holds omega^p_rq.
    """

    def __init__(self, geometry, omega):
        N = geometry.dim
        self.geometry = geometry
        self.omega = [[[as_scalar(omega[p][r][q]) for q in range(N)] for r in range(N)] for p in range(N)]

    @classmethod
    def flat(cls, geometry):
        N = geometry.dim
        return cls(geometry, [[[0] * N for _ in range(N)] for _ in range(N)])

    @classmethod
    def scaled_structure(cls, geometry, factor):
        """omega^p_rq = factor * c^p_rq."""
        N = geometry.dim
        f = as_scalar(factor)
        return cls(geometry, [[[f * geometry.structure_constant(r, q, p) for q in range(N)]
                               for r in range(N)] for p in range(N)])

    def as_dv_connection(self):
        """The same connection on the bimodule O^1 M_n = M_n^N (theta^s central)."""
        geo = self.geometry
        N = geo.dim
        alg = geo.algebra
        n2 = alg.dim
        P = free_bimodule(alg, N)
        mats = []
        for r, u in enumerate(geo.calc.derivations):
            m = _zero_mat(P.dim, P.dim)
            for s in range(N):
                for a in range(n2):
                    for b in range(n2):
                        if u.matrix[a][b]:
                            m[s * n2 + a][s * n2 + b] += u.matrix[a][b]
                for t in range(N):
                    w = self.omega[s][r][t]
                    if w:
                        for a in range(n2):
                            m[t * n2 + a][s * n2 + a] += w
            mats.append(m)
        return DVConnection(P, geo.calc.derivations, mats)


def mn_torsion(conn):
    """T[p][r][q] = (d theta^p)(u_r, u_q) - nabla_r(theta^p)(u_q) + nabla_q(theta^p)(u_r).

    All values are scalars because theta^p(u_q) is a multiple of the unit.
    """
    from .ncdiff import ce_d
    geo = conn.geometry
    N = geo.dim
    unit = geo.algebra.unit
    piv = next(i for i, x in enumerate(unit) if x)
    T = []
    for p in range(N):
        dth = ce_d(geo.theta(p))
        table = []
        for r in range(N):
            row = []
            for q in range(N):
                val = dth(r, q)
                scal = val[piv] / unit[piv]
                if val != [scal * x for x in unit]:
                    raise ValueError("d theta is not scalar-valued")
                row.append(scal - conn.omega[p][r][q] + conn.omega[p][q][r])
            table.append(row)
        T.append(table)
    return T


def mn_curvature(conn):
    """R[p][t][r][q]: R(u_r, u_q) theta^p = R[p][t][r][q] theta^t, with
    R^p_{t rq} = omega^p_qs omega^s_rt - omega^p_rs omega^s_qt - c^s_rq omega^p_st."""
    geo = conn.geometry
    N = geo.dim
    w = conn.omega
    c = [[[geo.structure_constant(r, q, s) for s in range(N)] for q in range(N)] for r in range(N)]
    R = []
    for p in range(N):
        Rp = []
        for t in range(N):
            Rt = []
            for r in range(N):
                row = []
                for q in range(N):
                    acc = ZERO
                    for s in range(N):
                        acc = acc + w[p][q][s] * w[s][r][t] - w[p][r][s] * w[s][q][t] - c[r][q][s] * w[p][s][t]
                    row.append(acc)
                Rt.append(row)
            Rp.append(Rt)
        R.append(Rp)
    return R


def torsion_free_solutions(geometry):
    """Affine solution set of T = 0 in the unknowns omega^p_rq.

    Returns (particular, kernel_basis) with vectors indexed p * N^2 + r * N + q.
    """
    from .linalg import solve
    N = geometry.dim
    flat = LinearConnectionMn.flat(geometry)
    T0 = mn_torsion(flat)
    rows, rhs = [], []
    for p in range(N):
        for r in range(N):
            for q in range(N):
                row = [ZERO] * N ** 3
                row[p * N * N + r * N + q] -= 1
                row[p * N * N + q * N + r] += 1
                rows.append(row)
                rhs.append(-T0[p][r][q])
    particular = solve(rows, rhs)
    kernel = sparse_nullspace([{j: x for j, x in enumerate(r) if x} for r in rows], N ** 3)
    return particular, kernel
