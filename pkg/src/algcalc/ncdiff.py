"""Differential calculi over finite-dimensional algebras.

Three models live here:

* the universal calculus, with forms a0 da1 ... dak kept in the normal form
  A (x) (A/K1)^(x)k;
* derivation-based forms: alternating maps on a chosen basis of derivations
  with values in the algebra, differentiated by the Chevalley-Eilenberg
  coboundary;
* matrix geometry over M_n, the derivation-based calculus on the inner
  derivations of a traceless anti-Hermitian basis.
"""

from itertools import product as iproduct

from .scalar import ZERO, ONE, I, as_scalar
from .linalg import sparse_rank, span_rank
from .algebra import (AlgebraElement, bracket, derivation_coordinates, inner_derivation,
                      matrix_algebra, matrix_to_element)
from .lie import LieAlgebra, Representation, Cochain, ce_coboundary, cup_product

__all__ = [
    "UNIVERSAL_MAX_DEGREE",
    "UniversalCalculus",
    "UniversalForm",
    "universal_d",
    "universal_cohomology",
    "DerivationCalculus",
    "BasisNotClosed",
    "ce_d",
    "wedge",
    "MatrixGeometry",
    "matrix_geometry",
    "gell_mann_basis",
    "maurer_cartan_matrix",
]

UNIVERSAL_MAX_DEGREE = 4


# universal calculus --------------------------------------------------------------

class UniversalCalculus:
    """Omega*(A) for a unital algebra A.

    The quotient A/K1 is modelled by dropping the coordinate ``pivot`` (the
    first index where the unit is nonzero); the remaining basis indices span a
    complement of K1.
    """

    def __init__(self, algebra, max_degree=UNIVERSAL_MAX_DEGREE):
        self.algebra = algebra
        self.max_degree = max_degree
        self.pivot = next(i for i, x in enumerate(algebra.unit) if x)
        self.bar_indices = tuple(i for i in range(algebra.dim) if i != self.pivot)

    def project(self, v):
        """Image of a vector of A in A/K1, as a dict index -> coefficient over bar_indices."""
        u = self.algebra.unit
        f = v[self.pivot] / u[self.pivot]
        out = {}
        for i in self.bar_indices:
            x = v[i] - f * u[i] if f else v[i]
            if x:
                out[i] = x
        return out

    def dimension(self, k):
        return self.algebra.dim * len(self.bar_indices) ** k

    def keys(self, k):
        return [(a,) + rest for a in range(self.algebra.dim) for rest in iproduct(self.bar_indices, repeat=k)]

    def form(self, degree, terms=None):
        return UniversalForm(self, degree, terms)

    def zero(self, degree):
        return UniversalForm(self, degree, {})

    def function(self, a):
        """The 0-form of an algebra element or coordinate vector."""
        v = a.coords if isinstance(a, AlgebraElement) else a
        return UniversalForm(self, 0, {(i,): x for i, x in enumerate(v) if x})

    def monomial(self, *elements):
        """a0 da1 ... dak for algebra elements (or coordinate vectors)."""
        vecs = [e.coords if isinstance(e, AlgebraElement) else e for e in elements]
        w = self.function(vecs[0])
        for v in vecs[1:]:
            w = w * universal_d(self.function(v))
        return w


class UniversalForm:
    """Element of Omega^k(A) in normal form.

    ``terms`` maps (i0, i1, ..., ik) to coefficients, meaning e_i0 de_i1 ... de_ik
    with i1..ik drawn from the complement basis of K1.
    """

    __slots__ = ("calc", "degree", "terms")

    def __init__(self, calc, degree, terms=None):
        if degree > calc.max_degree:
            raise ValueError(f"degree {degree} exceeds the configured cap {calc.max_degree}")
        self.calc = calc
        self.degree = degree
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if len(key) != degree + 1:
                raise ValueError(f"term {key} does not have degree {degree}")
            if any(i == calc.pivot for i in key[1:]):
                raise ValueError("differential factors must avoid the unit coordinate")
            c = as_scalar(c)
            if c:
                clean[key] = c
        self.terms = dict(sorted(clean.items()))

    @classmethod
    def _raw(cls, calc, degree, terms):
        obj = object.__new__(cls)
        obj.calc = calc
        obj.degree = degree
        obj.terms = dict(sorted((k, v) for k, v in terms.items() if v))
        return obj

    def _check(self, other):
        if other.calc is not self.calc:
            raise ValueError("forms over different calculi")

    def __add__(self, other):
        self._check(other)
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return UniversalForm._raw(self.calc, self.degree, t)

    def __neg__(self):
        return UniversalForm._raw(self.calc, self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if isinstance(c, AlgebraElement):
            return self.calc.function(c) * self
        c = as_scalar(c)
        return UniversalForm._raw(self.calc, self.degree, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, UniversalForm):
            self._check(other)
            return _form_product(self, other)
        if isinstance(other, AlgebraElement):
            return _form_product(self, self.calc.function(other))
        return as_scalar(other) * self

    def __eq__(self, other):
        if not isinstance(other, UniversalForm):
            return NotImplemented
        return self.calc is other.calc and self.degree == other.degree and self.terms == other.terms

    def __hash__(self):
        return hash((self.degree, tuple(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def vector(self):
        return [self.terms.get(k, ZERO) for k in self.calc.keys(self.degree)]

    def __repr__(self):
        return f"<UniversalForm degree={self.degree} terms={len(self.terms)}>"


def _right_mul_basis(calc, terms, degree, b):
    """(sum terms) * b for the basis index b, using (da) b = d(ab) - a db."""
    alg = calc.algebra
    out = {}
    if degree == 0:
        for (i0,), c in terms.items():
            for k, x in alg.product_terms(i0, b):
                out[(k,)] = out.get((k,), ZERO) + c * x
        return out
    bb = calc.project(alg.basis_vector(b))
    for key, c in terms.items():
        head, last = key[:-1], key[-1]
        for k, x in calc.project(_prod_vec(alg, last, b)).items():
            nk = head + (k,)
            out[nk] = out.get(nk, ZERO) + c * x
        shifted = _right_mul_basis(calc, {head: c}, degree - 1, last)
        for hk, y in shifted.items():
            for k, x in bb.items():
                nk = hk + (k,)
                out[nk] = out.get(nk, ZERO) - y * x
    return {k: v for k, v in out.items() if v}


def _prod_vec(alg, i, j):
    v = [ZERO] * alg.dim
    for k, x in alg.product_terms(i, j):
        v[k] = x
    return v


def _form_product(w, e):
    calc = w.calc
    degree = w.degree + e.degree
    if degree > calc.max_degree:
        raise ValueError(f"product degree {degree} exceeds the configured cap {calc.max_degree}")
    out = {}
    for key, c in e.terms.items():
        b0, tail = key[0], key[1:]
        for hk, x in _right_mul_basis(calc, w.terms, w.degree, b0).items():
            nk = hk + tail
            out[nk] = out.get(nk, ZERO) + c * x
    return UniversalForm._raw(calc, degree, out)


def universal_d(w):
    """d(a0 da1 ... dak) = 1 da0 da1 ... dak."""
    calc = w.calc
    if w.degree + 1 > calc.max_degree:
        raise ValueError(f"degree {w.degree + 1} exceeds the configured cap {calc.max_degree}")
    unit = [(m, u) for m, u in enumerate(calc.algebra.unit) if u]
    out = {}
    for key, c in w.terms.items():
        proj = calc.project(calc.algebra.basis_vector(key[0]))
        for k, x in proj.items():
            for m, u in unit:
                nk = (m, k) + key[1:]
                out[nk] = out.get(nk, ZERO) + c * x * u
    return UniversalForm._raw(calc, w.degree + 1, out)


def _d_rows(calc, k):
    """Sparse rows of d: Omega^k -> Omega^(k+1)."""
    src = {key: idx for idx, key in enumerate(calc.keys(k))}
    tgt = {key: idx for idx, key in enumerate(calc.keys(k + 1))}
    rows = [dict() for _ in tgt]
    for key, j in src.items():
        img = universal_d(UniversalForm._raw(calc, k, {key: ONE}))
        for nk, x in img.terms.items():
            rows[tgt[nk]][j] = x
    return rows, len(src)


def universal_cohomology(algebra, max_degree=2):
    """dim H^k of Omega*(A) for k = 0..max_degree, by exact ranks."""
    calc = UniversalCalculus(algebra, max_degree=max_degree + 1)
    ranks = []
    for k in range(max_degree + 1):
        rows, ncols = _d_rows(calc, k)
        ranks.append(sparse_rank(rows, ncols))
    return [calc.dimension(k) - ranks[k] - (ranks[k - 1] if k else 0) for k in range(max_degree + 1)]


# derivation-based forms ------------------------------------------------------------

class BasisNotClosed(ValueError):
    pass


class DerivationCalculus:
    """Forms on a bracket-closed list of derivations with values in the algebra.

    The brackets [u_r, u_q] = c^s_rq u_s define a Lie algebra acting on the
    algebra through the derivations themselves; k-forms are its Chevalley-
    Eilenberg k-cochains with coefficients in the algebra.
    """

    def __init__(self, algebra, derivations, names=None):
        self.algebra = algebra
        self.derivations = tuple(derivations)
        if any(u.algebra is not algebra for u in self.derivations):
            raise ValueError("derivations must act on the given algebra")
        if span_rank([u.vector() for u in self.derivations]) != len(self.derivations):
            raise ValueError("derivation list must be linearly independent")
        n = len(self.derivations)
        br = {}
        for r in range(n):
            for q in range(r + 1, n):
                coeffs = derivation_coordinates(self.derivations, bracket(self.derivations[r], self.derivations[q]))
                if coeffs is None:
                    raise BasisNotClosed(f"[u{r + 1}, u{q + 1}] is outside the span of the basis")
                t = [(s, c) for s, c in enumerate(coeffs) if c]
                if t:
                    br[(r, q)] = t
        self.names = tuple(names or [f"u{r + 1}" for r in range(n)])
        self.lie = LieAlgebra(self.names, br, check=False)
        self.rep = Representation(self.lie, [u.matrix for u in self.derivations], check=False)
        self.rep.algebra = algebra

    @property
    def rank(self):
        return len(self.derivations)

    def structure_constant(self, r, q, s):
        """c^s_rq with [u_r, u_q] = c^s_rq u_s."""
        return self.lie.structure_constant(r, q, s)

    def form(self, degree, components=None):
        comps = {}
        for key, val in (components or {}).items():
            comps[key] = val.coords if isinstance(val, AlgebraElement) else val
        return Cochain(self.rep, degree, comps)

    def function(self, a):
        v = a.coords if isinstance(a, AlgebraElement) else a
        return Cochain(self.rep, 0, {(): v})

    def one(self):
        return self.function(self.algebra.unit)

    def theta(self, r):
        """The 1-form dual to u_r, with value the unit."""
        return Cochain(self.rep, 1, {(r,): self.algebra.unit})

    def value(self, phi, *args):
        """phi(u_args) as an algebra element."""
        return AlgebraElement(self.algebra, phi(*args))

    def times(self, a, phi):
        """Left multiplication of a form by an algebra element."""
        return wedge(self.function(a), phi)

    def times_right(self, phi, a):
        return wedge(phi, self.function(a))


def ce_d(phi):
    """Exterior derivative of a derivation-based form."""
    return ce_coboundary(phi)


def wedge(phi, psi):
    """Signed shuffle product with the algebra product on values (order kept)."""
    if phi.rep is not psi.rep:
        raise ValueError("forms over different derivation bases")
    alg = getattr(phi.rep, "algebra", None)
    if alg is None:
        raise ValueError("form does not belong to a derivation calculus")
    return cup_product(phi, psi, product=alg.mul_vec)


# matrix geometry -------------------------------------------------------------------

def gell_mann_basis(n):
    """Generalized Gell-Mann matrices of size n (exact; the k-th diagonal one is
    diag(1, ..., 1, -(k-1), 0, ...) without the irrational normalization)."""
    out = []
    for k in range(1, n):
        for j in range(k):
            s = [[ZERO] * n for _ in range(n)]
            s[j][k] = s[k][j] = ONE
            out.append(s)
            a = [[ZERO] * n for _ in range(n)]
            a[j][k] = -I
            a[k][j] = I
            out.append(a)
        d = [[ZERO] * n for _ in range(n)]
        for i in range(k):
            d[i][i] = ONE
        d[k][k] = as_scalar(-k)
        out.append(d)
    return out


class MatrixGeometry:
    """Derivation-based calculus over M_n.

    The basis eps_r = -(i/2) lambda_r is traceless and anti-Hermitian.  The
    derivations are u_r(a) = a eps_r - eps_r a, so that the 1-form
    theta = eps_r theta^r satisfies da = a theta - theta a, and the structure
    constants are fixed by [u_r, u_q] = c^s_rq u_s.
    """

    def __init__(self, n, basis=None):
        self.n = n
        self.algebra = matrix_algebra(n)
        mats = basis if basis is not None else [[[as_scalar(-I / 2) * x for x in row] for row in m]
                                                for m in gell_mann_basis(n)]
        self.epsilon = [matrix_to_element(self.algebra, m) for m in mats]
        if len(self.epsilon) != n * n - 1:
            raise ValueError(f"need n^2 - 1 = {n * n - 1} basis matrices")
        for e in self.epsilon:
            if sum(e.coords[i * n + i] for i in range(n)) != 0:
                raise ValueError("basis matrices must be traceless")
        derivs = [inner_derivation(-e) for e in self.epsilon]
        try:
            self.calc = DerivationCalculus(self.algebra, derivs, names=[f"u{r + 1}" for r in range(len(derivs))])
        except BasisNotClosed as exc:
            raise ValueError(f"supplied basis is not closed under the commutator: {exc}") from None
        self.metadata = {"basis": "generalized Gell-Mann times -i/2" if basis is None else "user",
                         "diagonal_normalization": "diag(1,...,1,-k,0,...)"}

    @property
    def dim(self):
        return len(self.epsilon)

    def structure_constant(self, r, q, s):
        return self.calc.structure_constant(r, q, s)

    def structure_constants(self):
        N = self.dim
        return [[[self.structure_constant(r, q, s) for s in range(N)] for q in range(N)] for r in range(N)]

    def theta(self, r):
        return self.calc.theta(r)

    def theta_form(self):
        """theta = eps_r theta^r."""
        N = self.dim
        return self.calc.form(1, {(r,): self.epsilon[r] for r in range(N)})

    def dual_basis_violation(self):
        """First (r, q) with theta^r(u_q) != delta_rq 1, or None."""
        one = self.algebra.unit
        zero = [ZERO] * self.algebra.dim
        for r in range(self.dim):
            th = self.theta(r)
            for q in range(self.dim):
                if th(q) != (list(one) if r == q else zero):
                    return (r, q)
        return None

    def theta_centrality_violation(self):
        """First (basis a, r, q) where a theta^r(u_q) != theta^r(u_q) a, or None."""
        alg = self.algebra
        for i in range(alg.dim):
            a = alg.basis_vector(i)
            for r in range(self.dim):
                th = self.theta(r)
                for q in range(self.dim):
                    v = th(q)
                    if alg.mul_vec(a, v) != alg.mul_vec(v, a):
                        return (i, r, q)
        return None

    def d_epsilon_residuals(self):
        """Residuals of d eps_r - c^s_qr eps_s theta^q, one per r with any nonzero component."""
        out = []
        for r in range(self.dim):
            lhs = ce_d(self.calc.function(self.epsilon[r]))
            comps = {}
            for q in range(self.dim):
                v = [ZERO] * self.algebra.dim
                for s in range(self.dim):
                    c = self.structure_constant(q, r, s)
                    if c:
                        v = [x + c * y for x, y in zip(v, self.epsilon[s].coords)]
                comps[(q,)] = v
            rhs = self.calc.form(1, comps)
            if lhs != rhs:
                out.append((r, lhs - rhs))
        return out

    def da_residual(self, a):
        """da - (a theta - theta a); zero for every a."""
        th = self.theta_form()
        fa = self.calc.function(a)
        return ce_d(fa) - (wedge(fa, th) - wedge(th, fa))


def matrix_geometry(n, basis=None):
    return MatrixGeometry(n, basis)


def maurer_cartan_matrix(geo):
    """Residuals of d theta^r + 1/2 c^r_qs theta^q ^ theta^s; empty when all vanish."""
    half = as_scalar(1) / 2
    out = []
    for r in range(geo.dim):
        lhs = ce_d(geo.theta(r))
        rhs = geo.calc.form(2, {})
        for q in range(geo.dim):
            for s in range(geo.dim):
                c = geo.structure_constant(q, s, r)
                if c:
                    rhs = rhs + (-half * c) * wedge(geo.theta(q), geo.theta(s))
        if lhs != rhs:
            out.append((r, lhs - rhs))
    return out
