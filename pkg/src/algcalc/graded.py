"""Grassmann algebras, supermatrices and Lie superalgebra cohomology."""

from itertools import combinations, combinations_with_replacement

from .scalar import ZERO, ONE, as_scalar
from .lie import LieAlgebra, JacobiError

__all__ = [
    "GRASSMANN_MAX_RANK",
    "GrassmannElement",
    "grassmann_mul",
    "body_soul",
    "grassmann_norm",
    "Supermatrix",
    "supermatrix_mul",
    "ParityError",
    "LieSuperalgebra",
    "SuperRepresentation",
    "SuperCochain",
    "super_ce_coboundary",
    "super_canonical",
    "superalgebra_one_one",
    "gl11",
    "osp12",
    "from_block_matrices",
    "super_tuples",
    "SUPER_LIBRARY",
]

GRASSMANN_MAX_RANK = 12


class ParityError(ValueError):
    pass


def _merge_sign(I, J):
    """Sign of sorting the concatenation I + J of two disjoint increasing tuples."""
    inv = 0
    for i in I:
        for j in J:
            if i > j:
                inv += 1
    return -1 if inv % 2 else 1


class GrassmannElement:
    """Element sum a_I c^I of the Grassmann algebra on generators c^1..c^N.

    ``terms`` maps increasing index tuples (subsets of 1..N) to scalars.
    """

    __slots__ = ("rank", "terms")

    def __init__(self, rank, terms=None, max_rank=GRASSMANN_MAX_RANK):
        if rank < 0:
            raise ValueError("rank must be non-negative")
        if rank > max_rank:
            raise ValueError(f"Grassmann rank {rank} exceeds the configured cap {max_rank}")
        acc = {}
        for key, val in (terms or {}).items():
            key = tuple(key)
            if any(not 1 <= k <= rank for k in key):
                raise ValueError(f"generator index out of range 1..{rank} in {key}")
            if len(set(key)) != len(key):
                continue
            skey = tuple(sorted(key))
            sign = 1
            for a in range(len(key)):
                for b in range(a + 1, len(key)):
                    if key[a] > key[b]:
                        sign = -sign
            acc[skey] = acc.get(skey, ZERO) + sign * as_scalar(val)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "terms", {k: v for k, v in sorted(acc.items(), key=_term_order) if v})

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannElement is immutable")

    @classmethod
    def scalar(cls, rank, x):
        return cls(rank, {(): x})

    @classmethod
    def generator(cls, rank, k):
        return cls(rank, {(k,): ONE})

    @classmethod
    def _raw(cls, rank, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "terms", {k: v for k, v in sorted(terms.items(), key=_term_order) if v})
        return obj

    def _coerce(self, other):
        if isinstance(other, GrassmannElement):
            if other.rank != self.rank:
                raise ValueError(f"Grassmann rank mismatch: {self.rank} vs {other.rank}")
            return other
        return GrassmannElement.scalar(self.rank, as_scalar(other))

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, ZERO) + v
        return GrassmannElement._raw(self.rank, t)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement._raw(self.rank, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, GrassmannElement):
            c = as_scalar(other)
            return GrassmannElement._raw(self.rank, {k: c * v for k, v in self.terms.items()})
        return grassmann_mul(self, other)

    def __rmul__(self, other):
        c = as_scalar(other)
        return GrassmannElement._raw(self.rank, {k: c * v for k, v in self.terms.items()})

    def __pow__(self, n):
        result = GrassmannElement.scalar(self.rank, ONE)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, GrassmannElement):
            return self.rank == other.rank and self.terms == other.terms
        try:
            c = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(): c} if c else {})

    def __hash__(self):
        return hash((self.rank, tuple(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def even_part(self):
        return GrassmannElement._raw(self.rank, {k: v for k, v in self.terms.items() if len(k) % 2 == 0})

    def odd_part(self):
        return GrassmannElement._raw(self.rank, {k: v for k, v in self.terms.items() if len(k) % 2})

    def parity(self):
        """0 or 1 for a homogeneous element (zero counts as even), None otherwise."""
        ps = {len(k) % 2 for k in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def is_homogeneous(self):
        return self.parity() is not None

    def body_soul(self):
        return body_soul(self)

    def norm(self):
        return grassmann_norm(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, v in self.terms.items():
            mon = "*".join(f"c{i}" for i in k)
            parts.append(f"({v})" + (f"*{mon}" if mon else ""))
        return " + ".join(parts)

    def __repr__(self):
        return f"GrassmannElement({self.rank}, {self.terms!r})"


def _term_order(item):
    return (len(item[0]), item[0])


def grassmann_mul(a, b):
    """Exterior product; c^I c^J vanishes on overlap, else carries the shuffle sign."""
    if a.rank != b.rank:
        raise ValueError(f"Grassmann rank mismatch: {a.rank} vs {b.rank}")
    out = {}
    for I, x in a.terms.items():
        sI = set(I)
        for J, y in b.terms.items():
            if sI.intersection(J):
                continue
            key = tuple(sorted(I + J))
            val = x * y
            if _merge_sign(I, J) < 0:
                val = -val
            out[key] = out.get(key, ZERO) + val
    return GrassmannElement._raw(a.rank, out)


def body_soul(a):
    """(body, soul): the scalar part and the nilpotent remainder."""
    body = a.terms.get((), ZERO)
    return body, GrassmannElement._raw(a.rank, {k: v for k, v in a.terms.items() if k})


def grassmann_norm(a):
    """Sum of absolute values of the coefficients (real coefficients only)."""
    total = 0
    for v in a.terms.values():
        if not v.is_real():
            raise ValueError("norm is defined only for real coefficients")
        total += abs(v.re)
    return total


# supermatrices -----------------------------------------------------------------

class Supermatrix:
    """(n+m) x (n+m) matrix over a Grassmann algebra with block parity.

    An even supermatrix has even entries in the diagonal blocks and odd entries
    in the off-diagonal blocks; an odd supermatrix has the reverse.
    """

    __slots__ = ("n", "m", "rank", "entries", "parity")

    def __init__(self, n, m, entries, parity, rank=None):
        size = n + m
        if len(entries) != size or any(len(r) != size for r in entries):
            raise ValueError(f"supermatrix with blocks ({n}|{m}) needs {size}x{size} entries")
        if parity not in (0, 1):
            raise ValueError("parity must be 0 (even) or 1 (odd)")
        if rank is None:
            rank = next((x.rank for r in entries for x in r if isinstance(x, GrassmannElement)), 0)
        grid = []
        for row in entries:
            grid.append(tuple(x if isinstance(x, GrassmannElement) else GrassmannElement.scalar(rank, x)
                              for x in row))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "entries", tuple(grid))
        object.__setattr__(self, "parity", parity)
        w = self.parity_violation()
        if w is not None:
            i, j = w
            raise ParityError(f"entry ({i}, {j}) has the wrong parity for an "
                              f"{'odd' if parity else 'even'} supermatrix")

    def __setattr__(self, name, value):
        raise AttributeError("Supermatrix is immutable")

    def block_parity(self, i, j):
        """Required entry parity at (i, j)."""
        off = (i < self.n) != (j < self.n)
        return (self.parity + off) % 2

    def parity_violation(self):
        for i, row in enumerate(self.entries):
            for j, x in enumerate(row):
                if x.rank != self.rank:
                    raise ValueError("entries must share one Grassmann rank")
                p = x.parity()
                if x.is_zero():
                    continue
                if p != self.block_parity(i, j):
                    return (i, j)
        return None

    @classmethod
    def identity(cls, n, m, rank=0):
        size = n + m
        one = GrassmannElement.scalar(rank, ONE)
        zero = GrassmannElement(rank)
        return cls(n, m, [[one if i == j else zero for j in range(size)] for i in range(size)], 0, rank)

    def __add__(self, other):
        self._compatible(other)
        if other.parity != self.parity:
            raise ParityError("cannot add supermatrices of different parity")
        grid = [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        return Supermatrix(self.n, self.m, grid, self.parity, self.rank)

    def __mul__(self, other):
        return supermatrix_mul(self, other)

    def _compatible(self, other):
        if (self.n, self.m) != (other.n, other.m):
            raise ValueError(f"block mismatch: ({self.n}|{self.m}) vs ({other.n}|{other.m})")
        if self.rank != other.rank:
            raise ValueError("supermatrices over different Grassmann ranks")

    def __eq__(self, other):
        if not isinstance(other, Supermatrix):
            return NotImplemented
        return (self.n, self.m, self.parity, self.entries) == (other.n, other.m, other.parity, other.entries)

    def __hash__(self):
        return hash((self.n, self.m, self.parity, self.entries))

    def __repr__(self):
        return f"Supermatrix(({self.n}|{self.m}), parity={self.parity})"


def supermatrix_mul(A, B):
    A._compatible(B)
    size = A.n + A.m
    zero = GrassmannElement(A.rank)
    grid = []
    for i in range(size):
        row = []
        for j in range(size):
            acc = zero
            for k in range(size):
                a, b = A.entries[i][k], B.entries[k][j]
                if a.terms and b.terms:
                    acc = acc + grassmann_mul(a, b)
            row.append(acc)
        grid.append(row)
    return Supermatrix(A.n, A.m, grid, (A.parity + B.parity) % 2, A.rank)


# Lie superalgebras -------------------------------------------------------------

class LieSuperalgebra:
    """Lie superalgebra with even basis first, then odd basis.

    ``brackets`` maps ``(i, j)`` to ``[(k, c), ...]``.  Missing mirror entries
    are completed by graded antisymmetry [b, a] = -(-1)^(|a||b|) [a, b].
    """

    def __init__(self, even_names, odd_names, brackets, name=None, check=True):
        self.even_names = tuple(even_names)
        self.odd_names = tuple(odd_names)
        self.basis_names = self.even_names + self.odd_names
        self.even_dim = r = len(self.even_names)
        self.odd_dim = len(self.odd_names)
        self.dim = n = r + self.odd_dim
        self.parities = tuple([0] * r + [1] * self.odd_dim)
        self.name = name
        given = {}
        items = brackets.items() if isinstance(brackets, dict) else (
            ((e[0], e[1]), [(e[2], e[3])]) for e in brackets)
        for (i, j), terms in items:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"bracket index ({i}, {j}) out of range")
            acc = given.setdefault((i, j), {})
            for k, c in terms:
                if not 0 <= k < n:
                    raise ValueError(f"bracket target {k} out of range")
                acc[k] = acc.get(k, ZERO) + as_scalar(c)
        table = {}
        for (i, j), acc in given.items():
            acc = {k: c for k, c in acc.items() if c}
            for k in acc:
                if self.parities[k] != (self.parities[i] + self.parities[j]) % 2:
                    raise JacobiError(f"bracket [{self.basis_names[i]}, {self.basis_names[j]}] "
                                      f"does not respect parity", witness=(i, j))
            s = -1 if self.parities[i] * self.parities[j] == 0 else 1
            mirror = {k: s * c for k, c in acc.items()}
            if (j, i) in given:
                other = {k: c for k, c in given[(j, i)].items() if c}
                if other != mirror:
                    raise JacobiError(f"bracket table not graded antisymmetric at ({i}, {j})", witness=(i, j))
            table[(i, j)] = tuple(sorted(acc.items()))
            table[(j, i)] = tuple(sorted(mirror.items()))
        self.brackets = {ij: t for ij, t in table.items() if t}
        if check:
            w = self.jacobi_violation()
            if w is not None:
                raise JacobiError(f"graded Jacobi identity fails on {w}", witness=w)

    def bracket_terms(self, i, j):
        return self.brackets.get((i, j), ())

    def structure_constant(self, i, j, k):
        return dict(self.bracket_terms(i, j)).get(k, ZERO)

    def _br_vec(self, i, v):
        out = [ZERO] * self.dim
        for j, b in enumerate(v):
            if b:
                for k, c in self.bracket_terms(i, j):
                    out[k] = out[k] + b * c
        return out

    def jacobi_violation(self):
        """First triple (a, b, c) where the signed cyclic sum
        (-1)^(|a||c|)[a,[b,c]] + (-1)^(|b||a|)[b,[c,a]] + (-1)^(|c||b|)[c,[a,b]] is nonzero."""
        n, p = self.dim, self.parities
        for a in range(n):
            for b in range(a, n):
                for c in range(b, n):
                    total = [ZERO] * n
                    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                        inner = [ZERO] * n
                        for k, v in self.bracket_terms(y, z):
                            inner[k] = v
                        s = -1 if p[x] * p[z] else 1
                        total = [t + s * u for t, u in zip(total, self._br_vec(x, inner))]
                    if any(total):
                        return (a, b, c)
        return None

    def even_part(self):
        """The even subalgebra as an ordinary Lie algebra."""
        r = self.even_dim
        br = {(i, j): list(t) for (i, j), t in self.brackets.items() if i < j < r}
        return LieAlgebra(self.even_names, br, name=self.name, check=False)

    def __repr__(self):
        return f"<LieSuperalgebra {self.name or ''} ({self.even_dim}|{self.odd_dim})>"


class SuperRepresentation:
    """Graded module: action matrices rho(e_i) of parity |e_i| on a graded vector space.

    ``module_parities`` lists the parity of each module basis vector.
    """

    def __init__(self, lie, matrices, module_parities, check=True, name=None):
        self.lie = lie
        self.name = name
        self.module_parities = tuple(module_parities)
        self.module_dim = d = len(self.module_parities)
        if len(matrices) != lie.dim:
            raise ValueError("need one action matrix per basis element")
        self.matrices = tuple(tuple(tuple(as_scalar(x) for x in row) for row in m) for m in matrices)
        if any(len(m) != d or any(len(r) != d for r in m) for m in self.matrices):
            raise ValueError("action matrices must be square of the module dimension")
        for i, m in enumerate(self.matrices):
            for a in range(d):
                for b in range(d):
                    if m[a][b] and (self.module_parities[a] - self.module_parities[b] - lie.parities[i]) % 2:
                        raise ParityError(f"action of basis element {i} does not have its parity")
        if check:
            w = self.violation()
            if w is not None:
                raise JacobiError(f"representation identity fails on basis pair {w}", witness=w)

    @classmethod
    def trivial(cls, lie):
        return cls(lie, [[[ZERO]]] * lie.dim, [0], check=False, name="trivial")

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
        return cls(lie, mats, lie.parities, check=False, name="adjoint")

    def is_trivial(self):
        return not any(x for m in self.matrices for row in m for x in row)

    def violation(self):
        from .linalg import mat_mul
        n, d, p = self.lie.dim, self.module_dim, self.lie.parities
        for i in range(n):
            for j in range(i, n):
                lhs = [[ZERO] * d for _ in range(d)]
                for k, c in self.lie.bracket_terms(i, j):
                    lhs = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(lhs, self.matrices[k])]
                ab = mat_mul(self.matrices[i], self.matrices[j])
                ba = mat_mul(self.matrices[j], self.matrices[i])
                s = -1 if p[i] * p[j] else 1
                rhs = [[x - s * y for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
                if lhs != rhs:
                    return (i, j)
        return None


def super_canonical(args, parities):
    """(sign, canonical tuple) for super-alternating arguments.

    Canonical order is increasing basis index (evens precede odds).  Swapping
    adjacent arguments x, y contributes -(-1)^(|x||y|); a repeated even
    argument gives sign 0.
    """
    args = tuple(args)
    seen = set()
    for a in args:
        if parities[a] == 0:
            if a in seen:
                return 0, None
            seen.add(a)
    sign = 1
    for i in range(len(args)):
        for j in range(i + 1, len(args)):
            a, b = args[i], args[j]
            if a > b and not (parities[a] and parities[b]):
                sign = -sign
    return sign, tuple(sorted(args))


def super_tuples(lie, k):
    """Canonical index tuples of degree k: evens strictly increasing, odds weakly increasing."""
    r = lie.even_dim
    evens = range(r)
    odds = range(r, lie.dim)
    out = []
    for ne in range(min(k, r) + 1):
        no = k - ne
        if no and not lie.odd_dim:
            continue
        for E in combinations(evens, ne):
            for O in combinations_with_replacement(odds, no):
                out.append(E + O)
    return sorted(out)


class SuperCochain:
    """Super-alternating k-cochain: components on canonical tuples."""

    __slots__ = ("rep", "degree", "components")

    def __init__(self, rep, degree, components=None):
        self.rep = rep
        self.degree = degree
        d = rep.module_dim
        p = rep.lie.parities
        comps = {}
        for key, val in (components or {}).items():
            if len(key) != degree:
                raise ValueError(f"component index {key} does not have length {degree}")
            sign, skey = super_canonical(key, p)
            if not sign:
                continue
            vec = [as_scalar(x) for x in val] if isinstance(val, (list, tuple)) else [as_scalar(val)]
            if len(vec) != d:
                raise ValueError(f"component value must have length {d}")
            acc = comps.get(skey, [ZERO] * d)
            comps[skey] = [x + sign * y for x, y in zip(acc, vec)]
        self.components = {k: tuple(v) for k, v in sorted(comps.items()) if any(v)}

    def __call__(self, *args):
        sign, key = super_canonical(args, self.rep.lie.parities)
        d = self.rep.module_dim
        if not sign or key not in self.components:
            return [ZERO] * d
        v = self.components[key]
        return list(v) if sign > 0 else [-x for x in v]

    def is_zero(self):
        return not self.components

    def __eq__(self, other):
        if not isinstance(other, SuperCochain):
            return NotImplemented
        return self.rep is other.rep and self.degree == other.degree and self.components == other.components

    def __hash__(self):
        return hash((self.degree, tuple(self.components.items())))

    def __repr__(self):
        return f"<SuperCochain degree={self.degree} terms={len(self.components)}>"


def _front_sign(pars, idx, removed=()):
    """Koszul sign of moving the argument at position idx to the front, skipping removed positions."""
    s = 1
    for l in range(idx):
        if l in removed:
            continue
        s = -s if not (pars[idx] and pars[l]) else s
    return s


def super_ce_coboundary(c):
    """Coboundary of a Lie superalgebra cochain.

    For arguments x_1..x_{k+1} (evens first), with e_i the Koszul sign of moving
    x_i to the front and e_ij that of moving x_i then x_j to the front,

        dc(x) = sum_i e_i (-1)^(|x_i||c|) x_i c(..^i..) - sum_{i<j} e_ij c([x_i, x_j], ..^i..^j..)

    On purely even arguments e_i = (-1)^(i-1) and -e_ij = (-1)^(i+j), the
    ordinary Chevalley-Eilenberg signs.
    """
    rep, k = c.rep, c.degree
    g = rep.lie
    p = g.parities
    mp = rep.module_parities
    d = rep.module_dim
    trivial = rep.is_trivial()
    out = {}
    for T in super_tuples(g, k + 1):
        pars = [p[t] for t in T]
        acc = [ZERO] * d
        if not trivial:
            for i, t in enumerate(T):
                rest = T[:i] + T[i + 1:]
                val = c(*rest)
                if not any(val):
                    continue
                s = _front_sign(pars, i)
                rest_par = sum(p[x] for x in rest)
                m = rep.matrices[t]
                for a in range(d):
                    row = m[a]
                    tot = ZERO
                    for b, v in enumerate(val):
                        if v and row[b]:
                            cpar = (mp[b] - rest_par) % 2
                            sb = -s if (p[t] and cpar) else s
                            tot = tot + sb * row[b] * v
                    acc[a] = acc[a] + tot
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                terms = g.bracket_terms(T[i], T[j])
                if not terms:
                    continue
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                s = -_front_sign(pars, i) * _front_sign(pars, j, removed=(i,))
                for m, cm in terms:
                    val = c(m, *rest)
                    if any(val):
                        f = s * cm
                        acc = [x + f * y for x, y in zip(acc, val)]
        if any(acc):
            out[T] = acc
    return SuperCochain(rep, k + 1, out)


# instances ---------------------------------------------------------------------

def superalgebra_one_one(odd_square=0):
    """(1|1) superalgebra with even e central and [eps, eps] = odd_square * e."""
    br = {(1, 1): [(0, odd_square)]} if odd_square else {}
    return LieSuperalgebra(["e"], ["eps"], br, name=f"one_one[{odd_square}]")


def from_block_matrices(n, m, even_mats, odd_mats, even_names=None, odd_names=None, name=None):
    """Lie superalgebra spanned by scalar block matrices under the supercommutator."""
    from .linalg import mat_mul, coordinates_in
    mats = list(even_mats) + list(odd_mats)
    pars = [0] * len(even_mats) + [1] * len(odd_mats)
    vecs = [[as_scalar(x) for row in a for x in row] for a in mats]
    br = {}
    for i in range(len(mats)):
        for j in range(i, len(mats)):
            ab = mat_mul(mats[i], mats[j])
            ba = mat_mul(mats[j], mats[i])
            s = -1 if pars[i] * pars[j] else 1
            comm = [x - s * y for r1, r2 in zip(ab, ba) for x, y in zip(r1, r2)]
            coeffs = coordinates_in(vecs, comm)
            if coeffs is None:
                raise ValueError(f"basis elements {i}, {j} do not close under the supercommutator")
            terms = [(k, x) for k, x in enumerate(coeffs) if x]
            if terms:
                br[(i, j)] = terms
    even_names = even_names or [f"a{i + 1}" for i in range(len(even_mats))]
    odd_names = odd_names or [f"b{i + 1}" for i in range(len(odd_mats))]
    return LieSuperalgebra(even_names, odd_names, br, name=name)


def _unit(size, i, j):
    m = [[ZERO] * size for _ in range(size)]
    m[i][j] = ONE
    return m


def gl11():
    """gl(1|1): even E11, E22; odd E12, E21."""
    return from_block_matrices(1, 1, [_unit(2, 0, 0), _unit(2, 1, 1)], [_unit(2, 0, 1), _unit(2, 1, 0)],
                               ["E11", "E22"], ["E12", "E21"], name="gl11")


def osp12():
    """osp(1|2) with even h, e, f and odd x, y."""
    br = {
        (0, 1): [(1, 2)], (0, 2): [(2, -2)], (1, 2): [(0, 1)],
        (0, 3): [(3, 1)], (0, 4): [(4, -1)],
        (1, 4): [(3, -1)], (2, 3): [(4, -1)],
        (3, 3): [(1, 2)], (4, 4): [(2, -2)], (3, 4): [(0, 1)],
    }
    return LieSuperalgebra(["h", "e", "f"], ["x", "y"], br, name="osp12")


SUPER_LIBRARY = {
    "one_one_abelian": lambda: superalgebra_one_one(0),
    "one_one": lambda: superalgebra_one_one(1),
    "gl11": gl11,
    "osp12": osp12,
}
