"""Chevalley-Eilenberg cohomology of finite-dimensional Lie algebras.

Cochains are alternating maps stored on strictly increasing index tuples; the
values are coordinate vectors in the coefficient module.  The coboundary is

    dc(e_0..e_k) = sum_i (-1)^i e_i . c(..^i..)
                 + sum_{i<j} (-1)^(i+j) c([e_i, e_j], ..^i..^j..)
"""

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .scalar import ZERO, ONE, I, as_scalar
from .linalg import sparse_rank, sparse_nullspace, coordinates_in, mat_mul, transpose, rank

__all__ = [
    "JacobiError",
    "LieAlgebra",
    "Representation",
    "Cochain",
    "ce_coboundary",
    "coboundary_matrix",
    "betti_table",
    "BettiResult",
    "cup_product",
    "maurer_cartan_check",
    "abelian",
    "heisenberg",
    "su2",
    "sl2",
    "sl3",
    "upper_triangular",
    "direct_sum",
    "from_matrices",
    "LIE_LIBRARY",
]


class JacobiError(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class LieAlgebra:
    """Lie algebra with ``[e_i, e_j] = sum_k c^k_ij e_k``.

    ``brackets`` maps ``(i, j)`` to ``[(k, c), ...]``.  Entries may be given for
    i < j only; the antisymmetric completion is filled in.  Contradictory
    entries, a nonzero [e_i, e_i], or a Jacobi failure raise JacobiError.
    """

    def __init__(self, basis_names, brackets, name=None, check=True, metadata=None):
        self.basis_names = tuple(basis_names)
        self.dim = n = len(self.basis_names)
        self.name = name
        self.metadata = dict(metadata or {})
        table = {}
        items = brackets.items() if isinstance(brackets, dict) else (
            ((e[0], e[1]), [(e[2], e[3])]) for e in brackets)
        given = {}
        for (i, j), terms in items:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            acc = given.setdefault((i, j), {})
            for k, c in terms:
                if not 0 <= k < n:
                    raise ValueError(f"bracket target {k} out of range")
                acc[k] = acc.get(k, ZERO) + as_scalar(c)
        for (i, j), acc in given.items():
            acc = {k: c for k, c in acc.items() if c}
            if i == j:
                if acc:
                    raise JacobiError(f"[{self.basis_names[i]}, {self.basis_names[i]}] must vanish",
                                      witness=(i, i))
                continue
            neg = {k: -c for k, c in acc.items()}
            if (j, i) in given:
                other = {k: c for k, c in given[(j, i)].items() if c}
                if other != neg:
                    raise JacobiError(f"bracket table not antisymmetric at ({i}, {j})", witness=(i, j))
            table[(i, j)] = tuple(sorted(acc.items()))
            table[(j, i)] = tuple(sorted(neg.items()))
        self.brackets = {ij: t for ij, t in table.items() if t}
        if check:
            w = self.jacobi_violation()
            if w is not None:
                names = tuple(self.basis_names[x] for x in w)
                raise JacobiError(f"Jacobi identity fails on {names}", witness=w)

    def bracket_terms(self, i, j):
        return self.brackets.get((i, j), ())

    def structure_constant(self, i, j, k):
        for kk, c in self.bracket_terms(i, j):
            if kk == k:
                return c
        return ZERO

    def bracket_vec(self, x, y):
        out = [ZERO] * self.dim
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in self.bracket_terms(i, j):
                    out[k] = out[k] + ab * c
        return out

    def _bracket_basis_vec(self, i, v):
        out = [ZERO] * self.dim
        for j, b in enumerate(v):
            if b:
                for k, c in self.bracket_terms(i, j):
                    out[k] = out[k] + b * c
        return out

    def jacobi_violation(self):
        n = self.dim
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    total = [ZERO] * n
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = [ZERO] * n
                        for m, x in self.bracket_terms(b, c):
                            inner[m] = x
                        v = self._bracket_basis_vec(a, inner)
                        total = [s + t for s, t in zip(total, v)]
                    if any(total):
                        return (i, j, k)
        return None

    def is_abelian(self):
        return not self.brackets

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.basis_names == other.basis_names and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.basis_names, tuple(sorted(self.brackets.items()))))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{label} dim={self.dim}>"


class Representation:
    """A g-module P given by action matrices rho(e_i) (module_dim x module_dim)."""

    def __init__(self, lie, matrices, check=True, name=None):
        self.lie = lie
        self.name = name
        if len(matrices) != lie.dim:
            raise ValueError("need one action matrix per basis element")
        self.matrices = tuple(tuple(tuple(as_scalar(x) for x in row) for row in m) for m in matrices)
        dims = {len(m) for m in self.matrices}
        self.module_dim = dims.pop() if dims else 0
        if dims or any(len(r) != self.module_dim for m in self.matrices for r in m):
            raise ValueError("action matrices must be square and of equal size")
        if check:
            w = self.violation()
            if w is not None:
                raise JacobiError(f"rho([x, y]) != [rho x, rho y] on basis pair {w}", witness=w)

    @classmethod
    def trivial(cls, lie, dim=1):
        zero = [[ZERO] * dim for _ in range(dim)]
        return cls(lie, [zero] * lie.dim, check=False, name="trivial")

    @classmethod
    def adjoint(cls, lie):
        n = lie.dim
        mats = []
        for i in range(n):
            m = [[ZERO] * n for _ in range(n)]
            for j in range(n):
                for k, c in lie.bracket_terms(i, j):
                    m[k][j] = c
            mats.append(m)
        return cls(lie, mats, check=False, name="adjoint")

    def is_trivial(self):
        return not any(x for m in self.matrices for row in m for x in row)

    def act(self, i, v):
        m = self.matrices[i]
        out = [ZERO] * self.module_dim
        for a in range(self.module_dim):
            acc = ZERO
            row = m[a]
            for b, x in enumerate(v):
                if x and row[b]:
                    acc = acc + row[b] * x
            out[a] = acc
        return out

    def violation(self):
        n, d = self.lie.dim, self.module_dim
        for i in range(n):
            for j in range(i + 1, n):
                lhs = [[ZERO] * d for _ in range(d)]
                for k, c in self.lie.bracket_terms(i, j):
                    lhs = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, self.matrices[k])]
                ab = mat_mul(self.matrices[i], self.matrices[j])
                ba = mat_mul(self.matrices[j], self.matrices[i])
                rhs = [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
                if lhs != rhs:
                    return (i, j)
        return None

    def __repr__(self):
        return f"<Representation {self.name or ''} of {self.lie!r} dim={self.module_dim}>"


def _insert_sign(m, rest):
    """(sign, sorted tuple) for the tuple (m, *rest) with rest strictly increasing; sign 0 on repeats."""
    if m in rest:
        return 0, None
    pos = 0
    for r in rest:
        if r < m:
            pos += 1
        else:
            break
    return (-1 if pos % 2 else 1), rest[:pos] + (m,) + rest[pos:]


def sort_with_sign(args):
    """Sign of the sorting permutation and the sorted tuple; sign 0 if an index repeats."""
    args = list(args)
    if len(set(args)) != len(args):
        return 0, None
    sign = 1
    for i in range(len(args)):
        for j in range(i + 1, len(args)):
            if args[i] > args[j]:
                sign = -sign
    return sign, tuple(sorted(args))


class Cochain:
    """Alternating k-cochain with values in a representation's module."""

    __slots__ = ("rep", "degree", "components")

    def __init__(self, rep, degree, components=None):
        self.rep = rep
        self.degree = degree
        d = rep.module_dim
        comps = {}
        for key, val in (components or {}).items():
            key = tuple(key)
            if len(key) != degree:
                raise ValueError(f"component index {key} does not have length {degree}")
            sign, skey = sort_with_sign(key)
            if sign == 0:
                continue
            vec = [as_scalar(x) for x in val] if not _is_scalar_like(val) else [as_scalar(val)]
            if len(vec) != d:
                raise ValueError(f"component value must have length {d}")
            acc = comps.get(skey, [ZERO] * d)
            comps[skey] = [a + sign * b for a, b in zip(acc, vec)]
        self.components = {k: tuple(v) for k, v in sorted(comps.items()) if any(v)}

    @property
    def lie(self):
        return self.rep.lie

    def __call__(self, *args):
        """Value on arbitrary basis indices (alternating extension)."""
        if len(args) != self.degree:
            raise ValueError(f"cochain of degree {self.degree} takes {self.degree} arguments")
        sign, key = sort_with_sign(args)
        if sign == 0:
            return [ZERO] * self.rep.module_dim
        v = self.components.get(key)
        if v is None:
            return [ZERO] * self.rep.module_dim
        return list(v) if sign > 0 else [-x for x in v]

    def value(self, key):
        """Value on a strictly increasing tuple."""
        v = self.components.get(key)
        return list(v) if v is not None else [ZERO] * self.rep.module_dim

    def vector(self):
        """Coordinates in the lexicographic tuple x module basis."""
        d = self.rep.module_dim
        out = []
        for key in combinations(range(self.lie.dim), self.degree):
            out.extend(self.value(key) if key in self.components else [ZERO] * d)
        return out

    @classmethod
    def from_vector(cls, rep, degree, vec):
        d = rep.module_dim
        comps = {}
        for idx, key in enumerate(combinations(range(rep.lie.dim), degree)):
            chunk = vec[idx * d:(idx + 1) * d]
            if any(chunk):
                comps[key] = chunk
        return cls(rep, degree, comps)

    def is_zero(self):
        return not self.components

    def _compat(self, other):
        if other.rep is not self.rep or other.degree != self.degree:
            raise ValueError("cochains of different degree or module")

    def __add__(self, other):
        self._compat(other)
        comps = dict(self.components)
        for k, v in other.components.items():
            a = comps.get(k, (ZERO,) * len(v))
            comps[k] = [x + y for x, y in zip(a, v)]
        return Cochain(self.rep, self.degree, comps)

    def __sub__(self, other):
        return self + (-1) * other

    def __rmul__(self, c):
        c = as_scalar(c)
        return Cochain(self.rep, self.degree, {k: [c * x for x in v] for k, v in self.components.items()})

    def __neg__(self):
        return (-1) * self

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.rep is other.rep and self.degree == other.degree and self.components == other.components

    def __hash__(self):
        return hash((self.degree, tuple(self.components.items())))

    def __repr__(self):
        return f"<Cochain degree={self.degree} terms={len(self.components)}>"


def _is_scalar_like(x):
    return not isinstance(x, (list, tuple))


def unit_cochain(rep):
    """The degree-0 cochain 1 (trivial one-dimensional coefficients)."""
    if rep.module_dim != 1:
        raise ValueError("unit cochain needs one-dimensional coefficients")
    return Cochain(rep, 0, {(): [ONE]})


def dual_basis_cochain(rep, k):
    """theta^k: the 1-cochain e_i -> delta_ik with scalar values."""
    return Cochain(rep, 1, {(k,): [ONE]})


def ce_coboundary(c):
    """Chevalley-Eilenberg coboundary of a cochain."""
    rep, k = c.rep, c.degree
    g = rep.lie
    n, d = g.dim, rep.module_dim
    if k > n:
        raise ValueError("degree exceeds the dimension of the Lie algebra")
    trivial = rep.is_trivial()
    out = {}
    for T in combinations(range(n), k + 1):
        acc = [ZERO] * d
        if not trivial:
            for i, t in enumerate(T):
                val = c.value(T[:i] + T[i + 1:])
                if any(val):
                    v = rep.act(t, val)
                    if i % 2:
                        acc = [a - b for a, b in zip(acc, v)]
                    else:
                        acc = [a + b for a, b in zip(acc, v)]
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                terms = g.bracket_terms(T[i], T[j])
                if not terms:
                    continue
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                s0 = -1 if (i + j) % 2 else 1
                for m, cm in terms:
                    sign, key = _insert_sign(m, rest)
                    if not sign:
                        continue
                    val = c.components.get(key)
                    if val is None:
                        continue
                    f = cm * (s0 * sign)
                    acc = [a + f * b for a, b in zip(acc, val)]
        if any(acc):
            out[T] = acc
    return Cochain(rep, k + 1, out)


def coboundary_matrix(rep, k):
    """Sparse rows of delta^k : C^k -> C^(k+1) in the lexicographic tuple x module basis.

    Returns (rows, ncols) with rows as dicts col -> scalar.
    """
    g = rep.lie
    n, d = g.dim, rep.module_dim
    src = {T: idx for idx, T in enumerate(combinations(range(n), k))}
    ncols = len(src) * d
    if k + 1 > n:
        return [], ncols
    rows = []
    trivial = rep.is_trivial()
    for T in combinations(range(n), k + 1):
        block = [dict() for _ in range(d)]
        if not trivial:
            for i, t in enumerate(T):
                S = src[T[:i] + T[i + 1:]]
                s0 = -1 if i % 2 else 1
                m = rep.matrices[t]
                for a in range(d):
                    for b in range(d):
                        if m[a][b]:
                            col = S * d + b
                            block[a][col] = block[a].get(col, ZERO) + s0 * m[a][b]
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                s0 = -1 if (i + j) % 2 else 1
                for m, cm in g.bracket_terms(T[i], T[j]):
                    sign, key = _insert_sign(m, rest)
                    if not sign:
                        continue
                    S = src[key]
                    f = cm * (s0 * sign)
                    for a in range(d):
                        col = S * d + a
                        block[a][col] = block[a].get(col, ZERO) + f
        for row in block:
            rows.append({c: x for c, x in row.items() if x})
    return rows, ncols


@dataclass
class BettiResult:
    betti: list
    ranks: list
    representatives: list = field(default_factory=list)


def betti_table(rep, max_degree=None, representatives=True):
    """dim H^k for k = 0..max_degree, with cocycle representatives.

    dim H^k = nullity(delta^k) - rank(delta^(k-1)).
    """
    g = rep.lie
    n, d = g.dim, rep.module_dim
    if max_degree is None:
        max_degree = n
    if max_degree > n:
        raise ValueError("max_degree exceeds the dimension of the Lie algebra")
    ranks = []
    for k in range(max_degree + 1):
        rows, ncols = coboundary_matrix(rep, k)
        ranks.append(sparse_rank([dict(r) for r in rows], ncols))
    betti = []
    for k in range(max_degree + 1):
        dim_c = comb(n, k) * d
        prev = ranks[k - 1] if k > 0 else 0
        betti.append(dim_c - ranks[k] - prev)
    reps = []
    if representatives:
        for k in range(max_degree + 1):
            reps.append(_representatives(rep, k, betti[k]))
    return BettiResult(betti, ranks, reps)


def _representatives(rep, k, count):
    if count == 0:
        return []
    rows, ncols = coboundary_matrix(rep, k)
    cocycles = sparse_nullspace([dict(r) for r in rows], ncols)
    if k > 0:
        prows, pcols = coboundary_matrix(rep, k - 1)
        image = transpose([[r.get(c, ZERO) for c in range(pcols)] for r in prows], pcols) if prows else []
        image = [v for v in image if any(v)]
    else:
        image = []
    chosen = []
    current = list(image)
    base = rank(current) if current else 0
    for z in cocycles:
        trial = current + [z]
        r = rank(trial)
        if r > base:
            chosen.append(Cochain.from_vector(rep, k, z))
            current, base = trial, r
            if len(chosen) == count:
                break
    return chosen


def is_coboundary(c):
    """Whether c lies in the image of the coboundary."""
    if c.degree == 0:
        return c.is_zero()
    rows, ncols = coboundary_matrix(c.rep, c.degree - 1)
    dense = [[r.get(j, ZERO) for j in range(ncols)] for r in rows]
    cols = transpose(dense, ncols) if dense else []
    return coordinates_in(cols, c.vector()) is not None if cols else c.is_zero()


def _shuffles(T, r):
    """(sign, I, J) over splittings of the increasing tuple T into sizes r and len(T) - r."""
    n = len(T)
    for pos in combinations(range(n), r):
        pset = set(pos)
        rest = tuple(p for p in range(n) if p not in pset)
        inv = 0
        for p in pos:
            for q in rest:
                if p > q:
                    inv += 1
        yield (-1 if inv % 2 else 1), tuple(T[p] for p in pos), tuple(T[q] for q in rest)


def cup_product(c1, c2, product=None):
    """Signed shuffle product of cochains sharing a coefficient module.

    With one-dimensional coefficients the values multiply as scalars.  Otherwise
    ``product`` must be a bilinear map on module vectors (for example an
    algebra's ``mul_vec``); the order of the factors is kept.
    """
    if c1.rep is not c2.rep:
        raise ValueError("cochains must share a coefficient module")
    rep = c1.rep
    r, s = c1.degree, c2.degree
    n = rep.lie.dim
    if product is None:
        if rep.module_dim != 1:
            raise ValueError("a coefficient product is needed for modules of dimension > 1")
        product = lambda a, b: [a[0] * b[0]]
    if r + s > n:
        return Cochain(rep, r + s, {})
    out = {}
    for T in combinations(range(n), r + s):
        acc = [ZERO] * rep.module_dim
        for sign, I_, J in _shuffles(T, r):
            a = c1.components.get(I_)
            if a is None:
                continue
            b = c2.components.get(J)
            if b is None:
                continue
            v = product(list(a), list(b))
            acc = [x + sign * y for x, y in zip(acc, v)]
        if any(acc):
            out[T] = acc
    return Cochain(rep, r + s, out)


def maurer_cartan_check(g, rep=None):
    """Check d(theta^k) = -1/2 c^k_ij theta^i ^ theta^j for the dual basis.

    Returns a list of violations (k, lhs, rhs); empty for every valid Lie algebra.
    """
    rep = rep or Representation.trivial(g)
    thetas = [dual_basis_cochain(rep, k) for k in range(g.dim)]
    half = as_scalar(1) / 2
    violations = []
    for k in range(g.dim):
        lhs = ce_coboundary(thetas[k])
        rhs = Cochain(rep, 2, {})
        for i in range(g.dim):
            for j in range(g.dim):
                c = g.structure_constant(i, j, k)
                if c:
                    rhs = rhs + (-half * c) * cup_product(thetas[i], thetas[j])
        if lhs != rhs:
            violations.append((k, lhs, rhs))
    return violations


# construction library ----------------------------------------------------------

def abelian(n):
    return LieAlgebra([f"e{i + 1}" for i in range(n)], {}, name=f"abelian{n}")


def heisenberg():
    """[e1, e2] = e3."""
    return LieAlgebra(["e1", "e2", "e3"], {(0, 1): [(2, ONE)]}, name="heisenberg")


def su2():
    """[e_i, e_j] = eps_ijk e_k (real form, Levi-Civita constants)."""
    return LieAlgebra(["e1", "e2", "e3"],
                      {(0, 1): [(2, ONE)], (1, 2): [(0, ONE)], (2, 0): [(1, ONE)]}, name="su2")


def sl2():
    """Basis h, e, f with [h,e] = 2e, [h,f] = -2f, [e,f] = h."""
    return LieAlgebra(["h", "e", "f"],
                      {(0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)]}, name="sl2")


def from_matrices(matrices, names=None, name=None):
    """Lie algebra spanned by matrices closed under the commutator."""
    k = len(matrices)
    vecs = [[as_scalar(x) for row in m for x in row] for m in matrices]
    brackets = {}
    for i in range(k):
        for j in range(i + 1, k):
            a, b = matrices[i], matrices[j]
            ab = mat_mul(a, b)
            ba = mat_mul(b, a)
            comm = [x - y for r1, r2 in zip(ab, ba) for x, y in zip(r1, r2)]
            coeffs = coordinates_in(vecs, comm)
            if coeffs is None:
                raise ValueError(f"matrices {i} and {j} do not close under the commutator")
            terms = [(m, c) for m, c in enumerate(coeffs) if c]
            if terms:
                brackets[(i, j)] = terms
    names = names or [f"e{i + 1}" for i in range(k)]
    return LieAlgebra(names, brackets, name=name)


def _unit_matrix(n, i, j):
    m = [[ZERO] * n for _ in range(n)]
    m[i][j] = ONE
    return m


def upper_triangular(n):
    """Lie algebra of upper-triangular n x n matrices (basis E_ij, i <= j)."""
    idx = [(i, j) for i in range(n) for j in range(i, n)]
    mats = [_unit_matrix(n, i, j) for i, j in idx]
    return from_matrices(mats, [f"E{i + 1}{j + 1}" for i, j in idx], name=f"upper{n}")


def sl3():
    """sl(3) in the basis E12, E13, E21, E23, E31, E32, H1 = E11 - E22, H2 = E22 - E33."""
    n = 3
    off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)]
    mats = [_unit_matrix(n, i, j) for i, j in off]
    h1 = _unit_matrix(n, 0, 0)
    h1[1][1] = -ONE
    h2 = _unit_matrix(n, 1, 1)
    h2[2][2] = -ONE
    mats += [h1, h2]
    names = [f"E{i + 1}{j + 1}" for i, j in off] + ["H1", "H2"]
    return from_matrices(mats, names, name="sl3")


def direct_sum(g, h, name=None):
    n = g.dim
    brackets = {}
    for (i, j), t in g.brackets.items():
        if i < j:
            brackets[(i, j)] = list(t)
    for (i, j), t in h.brackets.items():
        if i < j:
            brackets[(n + i, n + j)] = [(n + k, c) for k, c in t]
    names = [f"{x}_1" for x in g.basis_names] + [f"{x}_2" for x in h.basis_names]
    return LieAlgebra(names, brackets, name=name or f"{g.name}+{h.name}", check=False)


LIE_LIBRARY = {
    "abelian2": lambda: abelian(2),
    "abelian3": lambda: abelian(3),
    "heisenberg": heisenberg,
    "su2": su2,
    "sl2": sl2,
    "sl3": sl3,
    "upper2": lambda: upper_triangular(2),
    "upper3": lambda: upper_triangular(3),
    "su2+abelian1": lambda: direct_sum(su2(), abelian(1)),
    "heisenberg+sl2": lambda: direct_sum(heisenberg(), sl2()),
}
