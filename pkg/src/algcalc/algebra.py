"""Finite-dimensional associative algebras presented by structure constants.

The product of basis elements is ``e_i e_j = sum_k c^k_ij e_k``.  Structure
constants are the single source of truth; everything else (center,
derivations, multiplication matrices) is computed from them.
"""

from .scalar import ZERO, ONE, as_scalar
from .linalg import sparse_nullspace, coordinates_in, mat_mul

__all__ = [
    "AlgebraMismatch",
    "FDAlgebra",
    "AlgebraElement",
    "Derivation",
    "center",
    "derivations",
    "inner_derivation",
    "bracket",
    "matrix_algebra",
    "group_algebra",
    "function_algebra",
    "truncated_polynomial",
    "direct_product",
    "ground_field",
    "unital_extension",
    "matrix_unit_index",
]


class AlgebraMismatch(ValueError):
    """Operands belong to different algebras."""


class FDAlgebra:
    """Associative unital algebra over Q(i) with a named basis.

    ``mult`` maps ``(i, j)`` to a tuple of ``(k, c^k_ij)`` with nonzero
    coefficients.  Associativity and the unit laws are verified at
    construction unless ``check=False``.
    """

    def __init__(self, basis_names, mult, unit, check=True, name=None, metadata=None):
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        self.name = name
        self.metadata = dict(metadata or {})
        table = {}
        items = mult.items() if isinstance(mult, dict) else ((tuple(e[:2]), [(e[2], e[3])]) for e in mult)
        for (i, j), terms in items:
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ValueError(f"structure constant index ({i}, {j}) out of range")
            acc = dict(table.get((i, j), ()))
            for k, c in terms:
                if not 0 <= k < self.dim:
                    raise ValueError(f"structure constant target {k} out of range")
                acc[k] = acc.get(k, ZERO) + as_scalar(c)
            table[(i, j)] = acc
        self.mult = {
            ij: tuple(sorted((k, c) for k, c in acc.items() if c)) for ij, acc in table.items()
        }
        self.mult = {ij: t for ij, t in self.mult.items() if t}
        if len(unit) != self.dim:
            raise ValueError("unit vector length does not match dimension")
        self.unit = tuple(as_scalar(x) for x in unit)
        if check:
            self.check()

    # structure --------------------------------------------------------------
    def product_terms(self, i, j):
        return self.mult.get((i, j), ())

    def structure_constant(self, i, j, k):
        for kk, c in self.product_terms(i, j):
            if kk == k:
                return c
        return ZERO

    def mul_vec(self, a, b):
        out = [ZERO] * self.dim
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in self.product_terms(i, j):
                    out[k] = out[k] + xy * c
        return out

    def basis_vector(self, i):
        v = [ZERO] * self.dim
        v[i] = ONE
        return v

    def check(self):
        """Raise ValueError on the first failure of associativity or the unit laws."""
        failure = self.find_violation()
        if failure:
            raise ValueError(failure)

    def find_violation(self):
        n = self.dim
        for i in range(n):
            e = self.basis_vector(i)
            if self.mul_vec(self.unit, e) != e or self.mul_vec(e, self.unit) != e:
                return f"unit law fails on basis element {self.basis_names[i]}"
        for i in range(n):
            for j in range(n):
                ij = self.product_terms(i, j)
                for k in range(n):
                    lhs = [ZERO] * n
                    for m, c in ij:
                        for t, d in self.product_terms(m, k):
                            lhs[t] = lhs[t] + c * d
                    rhs = [ZERO] * n
                    for m, c in self.product_terms(j, k):
                        for t, d in self.product_terms(i, m):
                            rhs[t] = rhs[t] + c * d
                    if lhs != rhs:
                        names = self.basis_names
                        return f"associativity fails on ({names[i]}, {names[j]}, {names[k]})"
        return None

    def left_mul_matrix(self, a):
        """Matrix of x -> a x (column j is a e_j)."""
        cols = [self.mul_vec(a, self.basis_vector(j)) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def right_mul_matrix(self, a):
        cols = [self.mul_vec(self.basis_vector(j), a) for j in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def is_commutative(self):
        return all(
            self.product_terms(i, j) == self.product_terms(j, i)
            for i in range(self.dim)
            for j in range(i + 1, self.dim)
        )

    # elements ---------------------------------------------------------------
    def element(self, coords):
        return AlgebraElement(self, coords)

    def basis(self):
        return [AlgebraElement(self, self.basis_vector(i)) for i in range(self.dim)]

    def one(self):
        return AlgebraElement(self, self.unit)

    def zero(self):
        return AlgebraElement(self, [ZERO] * self.dim)

    def __getitem__(self, name):
        return AlgebraElement(self, self.basis_vector(self.basis_names.index(name)))

    def __eq__(self, other):
        if not isinstance(other, FDAlgebra):
            return NotImplemented
        return (self.basis_names, self.mult, self.unit) == (other.basis_names, other.mult, other.unit)

    def __hash__(self):
        return hash((self.basis_names, tuple(sorted(self.mult.items())), self.unit))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<FDAlgebra{label} dim={self.dim}>"


class AlgebraElement:
    __slots__ = ("algebra", "coords")

    def __init__(self, algebra, coords):
        coords = tuple(as_scalar(x) for x in coords)
        if len(coords) != algebra.dim:
            raise ValueError(f"expected {algebra.dim} coordinates, got {len(coords)}")
        self.algebra = algebra
        self.coords = coords

    def _same(self, other):
        if not isinstance(other, AlgebraElement):
            return False
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraMismatch("elements belong to different algebras")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return AlgebraElement(self.algebra, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return AlgebraElement(self.algebra, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AlgebraElement(self.algebra, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            self._same(other)
            return AlgebraElement(self.algebra, self.algebra.mul_vec(self.coords, other.coords))
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return AlgebraElement(self.algebra, [a * c for a in self.coords])

    def __rmul__(self, other):
        c = as_scalar(other)
        return AlgebraElement(self.algebra, [c * a for a in self.coords])

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra == other.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __bool__(self):
        return any(self.coords)

    def __repr__(self):
        terms = [f"{c}*{n}" for c, n in zip(self.coords, self.algebra.basis_names) if c]
        return " + ".join(terms) or "0"


def multiply(a, b):
    """Product of two elements of the same algebra."""
    if a.algebra != b.algebra:
        raise AlgebraMismatch("elements belong to different algebras")
    return a * b


class Derivation:
    """Linear map u of an algebra with u(ab) = u(a)b + a u(b).

    ``matrix[k][i]`` is the coefficient of e_k in u(e_i).
    """

    __slots__ = ("algebra", "matrix")

    def __init__(self, algebra, matrix, check=True):
        m = tuple(tuple(as_scalar(x) for x in row) for row in matrix)
        if len(m) != algebra.dim or any(len(r) != algebra.dim for r in m):
            raise ValueError("derivation matrix must be dim x dim")
        self.algebra = algebra
        self.matrix = m
        if check:
            w = leibniz_violation(algebra, m)
            if w is not None:
                raise ValueError(f"Leibniz rule fails on basis pair {w}")

    def apply_vec(self, v):
        n = self.algebra.dim
        out = [ZERO] * n
        for i, x in enumerate(v):
            if not x:
                continue
            for k in range(n):
                c = self.matrix[k][i]
                if c:
                    out[k] = out[k] + c * x
        return out

    def __call__(self, a):
        if isinstance(a, AlgebraElement):
            return AlgebraElement(self.algebra, self.apply_vec(a.coords))
        return self.apply_vec(a)

    def vector(self):
        """Flattened coordinates (row-major), used for span computations."""
        return [x for row in self.matrix for x in row]

    def __add__(self, other):
        _check_same(self, other)
        return Derivation(self.algebra, _madd(self.matrix, other.matrix, 1), check=False)

    def __sub__(self, other):
        _check_same(self, other)
        return Derivation(self.algebra, _madd(self.matrix, other.matrix, -1), check=False)

    def __rmul__(self, c):
        c = as_scalar(c)
        return Derivation(self.algebra, [[c * x for x in row] for row in self.matrix], check=False)

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return self.algebra == other.algebra and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def is_zero(self):
        return not any(x for row in self.matrix for x in row)

    def __repr__(self):
        return f"<Derivation of {self.algebra!r}>"


def _check_same(u, v):
    if u.algebra != v.algebra:
        raise AlgebraMismatch("derivations of different algebras")


def _madd(a, b, s):
    return [[x + s * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def leibniz_violation(alg, m):
    """First basis pair (i, j) where the Leibniz rule fails for matrix m, else None."""
    n = alg.dim
    cols = [[m[k][i] for k in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            lhs = [ZERO] * n
            for t, c in alg.product_terms(i, j):
                for k in range(n):
                    if cols[t][k]:
                        lhs[k] = lhs[k] + c * cols[t][k]
            rhs = alg.mul_vec(cols[i], alg.basis_vector(j))
            rhs2 = alg.mul_vec(alg.basis_vector(i), cols[j])
            if lhs != [a + b for a, b in zip(rhs, rhs2)]:
                return (alg.basis_names[i], alg.basis_names[j])
    return None


def center(alg):
    """Basis of {z : z e_i = e_i z for all i}, as AlgebraElements."""
    n = alg.dim
    rows = []
    for i in range(n):
        # (z e_i - e_i z)_k = sum_m z_m (c^k_mi - c^k_im)
        eq = [dict() for _ in range(n)]
        for m in range(n):
            for k, c in alg.product_terms(m, i):
                eq[k][m] = eq[k].get(m, ZERO) + c
            for k, c in alg.product_terms(i, m):
                eq[k][m] = eq[k].get(m, ZERO) - c
        rows.extend({m: c for m, c in row.items() if c} for row in eq)
    return [AlgebraElement(alg, v) for v in sparse_nullspace(rows, n)]


def derivations(alg):
    """Basis of the derivation space Der(A) over the ground field."""
    n = alg.dim

    def var(k, i):
        return k * n + i

    rows = []
    for i in range(n):
        for j in range(n):
            eqs = {}
            # u(e_i e_j) = sum_m c^m_ij u(e_m)
            for m, c in alg.product_terms(i, j):
                for k in range(n):
                    eqs.setdefault(k, {})
                    eqs[k][var(k, m)] = eqs[k].get(var(k, m), ZERO) + c
            # - u(e_i) e_j = - sum_l u_li c^k_lj
            for l in range(n):
                for k, c in alg.product_terms(l, j):
                    eqs.setdefault(k, {})
                    eqs[k][var(l, i)] = eqs[k].get(var(l, i), ZERO) - c
                for k, c in alg.product_terms(i, l):
                    eqs.setdefault(k, {})
                    eqs[k][var(l, j)] = eqs[k].get(var(l, j), ZERO) - c
            for row in eqs.values():
                row = {v: c for v, c in row.items() if c}
                if row:
                    rows.append(row)
    sols = sparse_nullspace(rows, n * n)
    return [Derivation(alg, [v[k * n:(k + 1) * n] for k in range(n)], check=False) for v in sols]


def inner_derivation(b):
    """ad b: a -> ba - ab."""
    alg = b.algebra
    L = alg.left_mul_matrix(b.coords)
    R = alg.right_mul_matrix(b.coords)
    return Derivation(alg, _madd(L, R, -1), check=False)


def bracket(u, v):
    """Commutator u o v - v o u of derivations."""
    _check_same(u, v)
    uv = mat_mul(u.matrix, v.matrix)
    vu = mat_mul(v.matrix, u.matrix)
    return Derivation(u.algebra, _madd(uv, vu, -1), check=False)


def left_multiply(a, u):
    """The map x -> a u(x); raises ValueError when it is not a derivation."""
    m = mat_mul(a.algebra.left_mul_matrix(a.coords), u.matrix)
    return Derivation(u.algebra, m, check=True)


def derivation_coordinates(basis, u):
    """Coefficients of u in a list of derivations, or None if u is outside their span."""
    return coordinates_in([b.vector() for b in basis], u.vector())


# constructors ----------------------------------------------------------------

def matrix_unit_index(n, i, j):
    return i * n + j


def matrix_algebra(n):
    """M_n with the matrix-unit basis E_ij (row-major, 1-based names)."""
    names = [f"E{i + 1}{j + 1}" if n < 10 else f"E{i + 1}_{j + 1}" for i in range(n) for j in range(n)]
    mult = {}
    for i in range(n):
        for j in range(n):
            for l in range(n):
                mult[(i * n + j, j * n + l)] = [(i * n + l, ONE)]
    unit = [ONE if i == j else ZERO for i in range(n) for j in range(n)]
    return FDAlgebra(names, mult, unit, check=n <= 3, name=f"M{n}", metadata={"kind": "matrix", "n": n})


def matrix_to_element(alg, m):
    """Embed an n x n grid of scalars into M_n (built by :func:`matrix_algebra`)."""
    n = alg.metadata["n"]
    return AlgebraElement(alg, [m[i][j] for i in range(n) for j in range(n)])


def element_to_matrix(a):
    n = a.algebra.metadata["n"]
    return [list(a.coords[i * n:(i + 1) * n]) for i in range(n)]


def group_algebra(group, name=None):
    """Group ring Q(i)G with basis the group elements."""
    n = group.order
    mult = {(a, b): [(group.mul(a, b), ONE)] for a in range(n) for b in range(n)}
    unit = [ONE if g == group.identity else ZERO for g in range(n)]
    return FDAlgebra(group.names, mult, unit, check=False, name=name,
                     metadata={"kind": "group", "group": group})


def function_algebra(group, name=None):
    """Functions on a finite group, basis of delta functions, pointwise product."""
    n = group.order
    mult = {(g, g): [(g, ONE)] for g in range(n)}
    return FDAlgebra([f"d[{x}]" for x in group.names], mult, [ONE] * n, check=False, name=name,
                     metadata={"kind": "functions", "group": group})


def truncated_polynomial(n):
    """Q[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    names = ["1"] + ["x" if k == 1 else f"x^{k}" for k in range(1, n)]
    mult = {(i, j): [(i + j, ONE)] for i in range(n) for j in range(n) if i + j < n}
    unit = [ONE] + [ZERO] * (n - 1)
    return FDAlgebra(names, mult, unit, name=f"Q[x]/(x^{n})", metadata={"kind": "truncated", "n": n})


def ground_field():
    return FDAlgebra(["1"], {(0, 0): [(0, ONE)]}, [ONE], name="Q")


def direct_product(a, b, name=None):
    """A x B with componentwise product; basis names are prefixed when they clash."""
    na, nb = a.dim, b.dim
    names_a, names_b = list(a.basis_names), list(b.basis_names)
    if set(names_a) & set(names_b):
        names_a = [f"{s}_1" for s in names_a]
        names_b = [f"{s}_2" for s in names_b]
    mult = {}
    for (i, j), t in a.mult.items():
        mult[(i, j)] = list(t)
    for (i, j), t in b.mult.items():
        mult[(na + i, na + j)] = [(na + k, c) for k, c in t]
    return FDAlgebra(names_a + names_b, mult, list(a.unit) + list(b.unit), check=False,
                     name=name or f"{a.name or 'A'}x{b.name or 'B'}")


def unital_extension(a, name=None):
    """K + A with (l1, a1)(l2, a2) = (l1 l2, l1 a2 + l2 a1 + a1 a2).

    Basis: the adjoined identity first, then A's basis.
    """
    n = a.dim
    mult = {(0, 0): [(0, ONE)]}
    for i in range(n):
        mult[(0, i + 1)] = [(i + 1, ONE)]
        mult[(i + 1, 0)] = [(i + 1, ONE)]
    for (i, j), t in a.mult.items():
        mult[(i + 1, j + 1)] = [(k + 1, c) for k, c in t]
    names = ["1~"] + list(a.basis_names)
    return FDAlgebra(names, mult, [ONE] + [ZERO] * n, check=False,
                     name=name or f"{a.name or 'A'}~")


def is_derivation_matrix(alg, m):
    return leibniz_violation(alg, m) is None
