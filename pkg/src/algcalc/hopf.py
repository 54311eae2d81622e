"""Hopf algebras: axioms, convolution, adjoint actions, pairings, R-matrices.

Two backends:

* :class:`HopfAlgebra` is finite dimensional; tensors are sparse dicts from
  index tuples to scalars.
* :class:`UqBPlus` is U_q(b+) in the normal-form basis a^m g^k, checked up to
  a degree cap because the algebra is infinite dimensional.
"""

from dataclasses import dataclass, field
from itertools import product as iproduct

from .scalar import ZERO, ONE, as_scalar
from .linalg import rank, solve, InconsistentSystem
from .algebra import group_algebra, function_algebra

__all__ = [
    "HopfAlgebra",
    "LawResult",
    "HopfReport",
    "verify_hopf",
    "group_hopf",
    "function_hopf",
    "LinearForm",
    "convolution",
    "left_convolve",
    "right_convolve",
    "adjoint_action",
    "dual_pairing_check",
    "evaluation_pairing",
    "RMatrix",
    "qybe_check",
    "UqBPlus",
    "uq_bplus",
    "UQ_DEFAULT_CAP",
]

UQ_DEFAULT_CAP = 6


@dataclass
class LawResult:
    name: str
    passed: bool
    witness: object = None


@dataclass
class HopfReport:
    laws: list = field(default_factory=list)

    @property
    def passed(self):
        return all(l.passed for l in self.laws)

    def failed(self):
        return [l for l in self.laws if not l.passed]

    def law(self, name):
        return next(l for l in self.laws if l.name == name)

    def add(self, name, witness):
        self.laws.append(LawResult(name, witness is None, witness))


def _acc(d, key, val):
    v = d.get(key, ZERO) + val
    if v:
        d[key] = v
    else:
        d.pop(key, None)


class HopfAlgebra:
    """Finite-dimensional Hopf algebra on an FDAlgebra.

    ``comul`` maps i to [(j, k, c), ...] meaning Delta(e_i) = sum c e_j (x) e_k;
    ``counit`` lists epsilon(e_i); ``antipode[k][i]`` is the e_k coefficient of S(e_i).
    """

    def __init__(self, algebra, comul, counit, antipode, name=None):
        n = algebra.dim
        self.algebra = algebra
        self.dim = n
        self.name = name or algebra.name
        self.comul = {}
        for i, terms in (comul.items() if isinstance(comul, dict) else enumerate(comul)):
            d = {}
            for j, k, c in terms:
                if not (0 <= j < n and 0 <= k < n):
                    raise ValueError(f"comultiplication index out of range in Delta(e_{i})")
                _acc(d, (j, k), as_scalar(c))
            self.comul[i] = d
        for i in range(n):
            self.comul.setdefault(i, {})
        if len(counit) != n:
            raise ValueError("counit must list one value per basis element")
        self.counit = [as_scalar(x) for x in counit]
        if len(antipode) != n or any(len(r) != n for r in antipode):
            raise ValueError("antipode must be a dim x dim matrix")
        self.antipode = [[as_scalar(x) for x in row] for row in antipode]

    # linear maps on vectors and tensors -------------------------------------
    def delta(self, v):
        """Delta of a vector, as a tensor dict (j, k) -> c."""
        out = {}
        for i, x in enumerate(v):
            if x:
                for key, c in self.comul[i].items():
                    _acc(out, key, x * c)
        return out

    def eps(self, v):
        return sum((x * e for x, e in zip(v, self.counit) if x and e), ZERO)

    def S(self, v):
        n = self.dim
        return [sum((self.antipode[k][i] * v[i] for i in range(n) if v[i]), ZERO) for k in range(n)]

    def mul(self, x, y):
        return self.algebra.mul_vec(x, y)

    def basis(self, i):
        return self.algebra.basis_vector(i)

    def one(self):
        return list(self.algebra.unit)

    def tensor_mul(self, t, u):
        """Factorwise product of tensors of equal arity."""
        alg = self.algebra
        out = {}
        for k1, x in t.items():
            for k2, y in u.items():
                parts = [alg.product_terms(a, b) for a, b in zip(k1, k2)]
                if any(not p for p in parts):
                    continue
                for combo in iproduct(*parts):
                    c = x * y
                    for _, z in combo:
                        c = c * z
                    _acc(out, tuple(k for k, _ in combo), c)
        return out

    def apply_on_factor(self, t, pos, f):
        """Apply a linear map (vector -> dict index -> c) to one tensor factor."""
        out = {}
        for key, x in t.items():
            for j, y in f(key[pos]).items():
                _acc(out, key[:pos] + (j,) + key[pos + 1:], x * y)
        return out

    def delta_on_factor(self, t, pos):
        out = {}
        for key, x in t.items():
            for (j, k), y in self.comul[key[pos]].items():
                _acc(out, key[:pos] + (j, k) + key[pos + 1:], x * y)
        return out

    def multiply_out(self, t):
        """m: A (x) A -> A on a 2-tensor."""
        out = [ZERO] * self.dim
        for (j, k), x in t.items():
            for m, c in self.algebra.product_terms(j, k):
                out[m] = out[m] + x * c
        return out

    def vec_dict(self, v):
        return {(i,): x for i, x in enumerate(v) if x}

    def S_dict(self, i):
        return {k: self.antipode[k][i] for k in range(self.dim) if self.antipode[k][i]}

    def unit_tensor(self, arity):
        u = [(i, x) for i, x in enumerate(self.algebra.unit) if x]
        out = {}
        for combo in iproduct(u, repeat=arity):
            c = ONE
            for _, x in combo:
                c = c * x
            _acc(out, tuple(i for i, _ in combo), c)
        return out

    def is_commutative(self):
        return self.algebra.is_commutative()

    def is_cocommutative(self):
        return all(d == {(k, j): c for (j, k), c in d.items()} for d in self.comul.values())

    def antipode_squared_is_identity(self):
        n = self.dim
        for i in range(n):
            if self.S(self.S(self.basis(i))) != self.basis(i):
                return False
        return True

    def __repr__(self):
        return f"<HopfAlgebra {self.name or ''} dim={self.dim}>"


def verify_hopf(h):
    """Check every Hopf law on basis elements; returns a :class:`HopfReport`."""
    n = h.dim
    rep = HopfReport()
    one = h.one()

    w = None
    for i in range(n):
        d = h.comul[i]
        if h.delta_on_factor(d, 0) != h.delta_on_factor(d, 1):
            w = i
            break
    rep.add("coassociativity", w)

    w = None
    for i in range(n):
        d = h.comul[i]
        left = {}
        right = {}
        for (j, k), c in d.items():
            _acc(left, k, c * h.counit[j])
            _acc(right, j, c * h.counit[k])
        target = {i: ONE}
        if left != target:
            w = ("left", i)
            break
        if right != target:
            w = ("right", i)
            break
    rep.add("counit", w)

    w = None
    for i in range(n):
        d = h.comul[i]
        l = h.multiply_out(h.apply_on_factor(d, 0, h.S_dict))
        r = h.multiply_out(h.apply_on_factor(d, 1, h.S_dict))
        target = [h.counit[i] * x for x in one]
        if l != target:
            w = ("S (x) Id", i)
            break
        if r != target:
            w = ("Id (x) S", i)
            break
    rep.add("antipode", w)

    w = None
    for i in range(n):
        for j in range(n):
            lhs = h.delta(h.mul(h.basis(i), h.basis(j)))
            rhs = h.tensor_mul(h.comul[i], h.comul[j])
            if lhs != rhs:
                w = (i, j)
                break
        if w:
            break
    rep.add("comultiplication multiplicative", w)
    rep.add("comultiplication unital", None if h.delta(one) == h.unit_tensor(2) else "Delta(1)")

    w = None
    for i in range(n):
        for j in range(n):
            if h.eps(h.mul(h.basis(i), h.basis(j))) != h.counit[i] * h.counit[j]:
                w = (i, j)
                break
        if w:
            break
    rep.add("counit multiplicative", w)
    rep.add("counit unital", None if h.eps(one) == ONE else "epsilon(1)")

    rep.add("antipode unital", None if h.S(one) == one else "S(1)")
    w = next((i for i in range(n) if h.eps(h.S(h.basis(i))) != h.counit[i]), None)
    rep.add("counit of antipode", w)

    w = None
    for i in range(n):
        for j in range(n):
            if h.S(h.mul(h.basis(i), h.basis(j))) != h.mul(h.S(h.basis(j)), h.S(h.basis(i))):
                w = (i, j)
                break
        if w:
            break
    rep.add("antipode antimultiplicative", w)

    w = None
    for i in range(n):
        ss = h.apply_on_factor(h.apply_on_factor(h.comul[i], 0, h.S_dict), 1, h.S_dict)
        pds = {(k, j): c for (j, k), c in h.delta(h.S(h.basis(i))).items()}
        if ss != pds:
            w = i
            break
    rep.add("antipode anticomultiplicative", w)
    return rep


def group_hopf(group, name=None):
    """CG: Delta g = g (x) g, epsilon g = 1, S g = g^-1."""
    alg = group_algebra(group, name=name)
    n = group.order
    comul = {g: [(g, g, 1)] for g in range(n)}
    S = [[ONE if k == group.inv(i) else ZERO for i in range(n)] for k in range(n)]
    return HopfAlgebra(alg, comul, [1] * n, S, name=name)


def function_hopf(group, name=None):
    """C(G): Delta delta_g = sum_{hk = g} delta_h (x) delta_k, epsilon = evaluation at e, S delta_g = delta_{g^-1}."""
    alg = function_algebra(group, name=name)
    n = group.order
    comul = {g: [] for g in range(n)}
    for h in range(n):
        for k in range(n):
            comul[group.mul(h, k)].append((h, k, 1))
    counit = [1 if g == group.identity else 0 for g in range(n)]
    S = [[ONE if k == group.inv(i) else ZERO for i in range(n)] for k in range(n)]
    return HopfAlgebra(alg, comul, counit, S, name=name)


# convolution ------------------------------------------------------------------------

class LinearForm:
    """A linear form on a Hopf algebra, by its values on the basis."""

    __slots__ = ("values",)

    def __init__(self, values):
        self.values = tuple(as_scalar(x) for x in values)

    def __call__(self, v):
        return sum((x * y for x, y in zip(self.values, v) if x and y), ZERO)

    def __eq__(self, other):
        return isinstance(other, LinearForm) and self.values == other.values

    def __hash__(self):
        return hash(self.values)

    def __repr__(self):
        return f"LinearForm({[str(x) for x in self.values]})"


def convolution(f, g, h):
    """(f * g)(a) = sum f(a_(1)) g(a_(2))."""
    vals = []
    for i in range(h.dim):
        acc = ZERO
        for (j, k), c in h.comul[i].items():
            acc = acc + c * f.values[j] * g.values[k]
        vals.append(acc)
    return LinearForm(vals)


def left_convolve(f, a, h):
    """f * a = sum a_(1) f(a_(2))."""
    out = [ZERO] * h.dim
    for (j, k), c in h.delta(a).items():
        out[j] = out[j] + c * f.values[k]
    return out


def right_convolve(a, f, h):
    """a * f = sum f(a_(1)) a_(2)."""
    out = [ZERO] * h.dim
    for (j, k), c in h.delta(a).items():
        out[k] = out[k] + c * f.values[j]
    return out


def adjoint_action(h, x, y, side="left"):
    """left: sum x_(1) y S(x_(2)); right: sum S(x_(1)) y x_(2)."""
    out = [ZERO] * h.dim
    for (j, k), c in h.delta(x).items():
        if side == "left":
            v = h.mul(h.mul(h.basis(j), y), h.S(h.basis(k)))
        elif side == "right":
            v = h.mul(h.mul(h.S(h.basis(j)), y), h.basis(k))
        else:
            raise ValueError("side must be 'left' or 'right'")
        out = [p + c * q for p, q in zip(out, v)]
    return out


# pairings -------------------------------------------------------------------------

def evaluation_pairing(group_h, function_h):
    """<g, f> = f(g) between CG and C(G) (both indexed by the group elements)."""
    n = group_h.dim
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def dual_pairing_check(hA, hB, pairing):
    """Check <a, a'b'> = <Delta a, a' (x) b'>, <a (x) b, Delta' a'> = <ab, a'>,
    the counit and antipode relations, and non-degeneracy."""
    P = [[as_scalar(x) for x in row] for row in pairing]
    if len(P) != hA.dim or any(len(r) != hB.dim for r in P):
        raise ValueError("pairing matrix must be dim A x dim B")
    rep = HopfReport()

    def pair(x, y):
        return sum((x[i] * P[i][j] * y[j] for i in range(hA.dim) if x[i] for j in range(hB.dim) if y[j]), ZERO)

    def pair2(t, u):
        tot = ZERO
        for (i1, i2), x in t.items():
            for (j1, j2), y in u.items():
                tot = tot + x * y * P[i1][j1] * P[i2][j2]
        return tot

    w = None
    for i in range(hA.dim):
        for j in range(hB.dim):
            for k in range(hB.dim):
                lhs = pair(hA.basis(i), hB.mul(hB.basis(j), hB.basis(k)))
                rhs = pair2(hA.comul[i], {(j, k): ONE})
                if lhs != rhs:
                    w = (i, j, k)
                    break
            if w:
                break
        if w:
            break
    rep.add("pairing: product in second argument", w)

    w = None
    for i in range(hA.dim):
        for j in range(hA.dim):
            for k in range(hB.dim):
                lhs = pair2({(i, j): ONE}, hB.comul[k])
                rhs = pair(hA.mul(hA.basis(i), hA.basis(j)), hB.basis(k))
                if lhs != rhs:
                    w = (i, j, k)
                    break
            if w:
                break
        if w:
            break
    rep.add("pairing: product in first argument", w)

    w = next((("B", j) for j in range(hB.dim) if hB.counit[j] != pair(hA.one(), hB.basis(j))), None)
    if w is None:
        w = next((("A", i) for i in range(hA.dim) if hA.counit[i] != pair(hA.basis(i), hB.one())), None)
    rep.add("pairing: counits", w)

    w = None
    for i in range(hA.dim):
        for j in range(hB.dim):
            if pair(hA.basis(i), hB.S(hB.basis(j))) != pair(hA.S(hA.basis(i)), hB.basis(j)):
                w = (i, j)
                break
        if w:
            break
    rep.add("pairing: antipodes", w)
    full = hA.dim == hB.dim and rank(P) == hA.dim
    rep.add("pairing: non-degenerate", None if full else f"rank {rank(P)}")
    return rep


# R-matrices -----------------------------------------------------------------------

class RMatrix:
    """Invertible element of A (x) A; the inverse is computed at construction."""

    def __init__(self, h, tensor):
        self.h = h
        n = h.dim
        if isinstance(tensor, dict):
            self.tensor = {tuple(k): as_scalar(v) for k, v in tensor.items() if as_scalar(v)}
        else:
            if len(tensor) != n * n:
                raise ValueError("R-matrix needs dim^2 coordinates")
            self.tensor = {(i // n, i % n): as_scalar(x) for i, x in enumerate(tensor) if as_scalar(x)}
        self.inverse = self._inverse()

    @classmethod
    def identity(cls, h):
        return cls(h, h.unit_tensor(2))

    def _inverse(self):
        h, n = self.h, self.h.dim
        keys = [(i, j) for i in range(n) for j in range(n)]
        cols = []
        for key in keys:
            prod = h.tensor_mul(self.tensor, {key: ONE})
            cols.append([prod.get(k, ZERO) for k in keys])
        mat = [[cols[c][r] for c in range(len(keys))] for r in range(len(keys))]
        one = h.unit_tensor(2)
        try:
            x = solve(mat, [one.get(k, ZERO) for k in keys])
        except InconsistentSystem:
            raise ValueError("R-matrix is not invertible") from None
        inv = {k: v for k, v in zip(keys, x) if v}
        if h.tensor_mul(inv, self.tensor) != one or h.tensor_mul(self.tensor, inv) != one:
            raise ValueError("R-matrix is not invertible")
        return inv

    def leg(self, which):
        """R_12, R_13 or R_23 as a 3-tensor."""
        u = [(i, x) for i, x in enumerate(self.h.algebra.unit) if x]
        out = {}
        for (a, b), c in self.tensor.items():
            for i, x in u:
                key = {"12": (a, b, i), "13": (a, i, b), "23": (i, a, b)}[which]
                _acc(out, key, c * x)
        return out


def qybe_check(R, h=None, quasi_triangular=True):
    """QYBE R12 R13 R23 = R23 R13 R12 and optionally the quasi-triangularity laws."""
    h = h or R.h
    rep = HopfReport()
    R12, R13, R23 = R.leg("12"), R.leg("13"), R.leg("23")
    lhs = h.tensor_mul(h.tensor_mul(R12, R13), R23)
    rhs = h.tensor_mul(h.tensor_mul(R23, R13), R12)
    resid = {k: lhs.get(k, ZERO) - rhs.get(k, ZERO) for k in set(lhs) | set(rhs)}
    resid = {k: v for k, v in sorted(resid.items()) if v}
    rep.add("quantum Yang-Baxter", resid or None)
    if quasi_triangular:
        a = h.delta_on_factor(R.tensor, 0)
        rep.add("(Delta (x) Id) R = R13 R23", None if a == h.tensor_mul(R13, R23) else "tensor mismatch")
        b = h.delta_on_factor(R.tensor, 1)
        rep.add("(Id (x) Delta) R = R13 R12", None if b == h.tensor_mul(R13, R12) else "tensor mismatch")
        w = None
        for i in range(h.dim):
            d = h.comul[i]
            flip = {(k, j): c for (j, k), c in d.items()}
            conj = h.tensor_mul(h.tensor_mul(R.tensor, d), R.inverse)
            if flip != conj:
                w = i
                break
        rep.add("flipped coproduct = R Delta R^-1", w)
    return rep


# U_q(b+) ------------------------------------------------------------------------------

class UqBPlus:
    """U_q(b+) with basis a^m g^k (m >= 0, k in Z) and relations g a = q a g, g g^-1 = 1.

    Elements are dicts (m, k) -> scalar; tensors are dicts of tuples of such pairs.
    """

    def __init__(self, q, degree_cap=UQ_DEFAULT_CAP):
        q = as_scalar(q)
        if not q:
            raise ValueError("q must be nonzero")
        self.q = q
        self.degree_cap = degree_cap

    # elements
    @staticmethod
    def mono(m, k, c=1):
        return {(m, k): as_scalar(c)}

    def one(self):
        return self.mono(0, 0)

    def a(self):
        return self.mono(1, 0)

    def g(self):
        return self.mono(0, 1)

    def ginv(self):
        return self.mono(0, -1)

    def monomials(self, cap=None):
        cap = self.degree_cap if cap is None else cap
        return [(m, k) for m in range(cap + 1) for k in range(-(cap - m), cap - m + 1)]

    def mul(self, x, y):
        """(a^m g^k)(a^n g^l) = q^(kn) a^(m+n) g^(k+l)."""
        out = {}
        for (m, k), c in x.items():
            for (n, l), d in y.items():
                _acc(out, (m + n, k + l), c * d * self.q ** (k * n))
        return out

    def add(self, x, y, s=1):
        out = dict(x)
        for key, v in y.items():
            _acc(out, key, s * v)
        return out

    def scale(self, x, c):
        c = as_scalar(c)
        return {k: c * v for k, v in x.items() if c * v}

    def normal_form(self, word):
        """Reduce a word in the letters 'a', 'g', 'G' (g^-1) by the rewriting rules
        g a -> q a g, G a -> q^-1 a G, g G -> 1, G g -> 1."""
        rules = {("g", "a"): (self.q, ("a", "g")), ("G", "a"): (self.q.inverse(), ("a", "G")),
                 ("g", "G"): (ONE, ()), ("G", "g"): (ONE, ())}
        coeff, w = ONE, list(word)
        changed = True
        while changed:
            changed = False
            for i in range(len(w) - 1):
                r = rules.get((w[i], w[i + 1]))
                if r:
                    c, rep = r
                    coeff = coeff * c
                    w[i:i + 2] = list(rep)
                    changed = True
                    break
        m = sum(1 for x in w if x == "a")
        k = sum(1 for x in w if x == "g") - sum(1 for x in w if x == "G")
        if w != ["a"] * m + (["g"] * k if k >= 0 else ["G"] * (-k)):
            raise ValueError(f"word {word!r} did not reach normal form")
        return {(m, k): coeff}

    # tensors
    def tmul(self, t, u):
        out = {}
        for k1, x in t.items():
            for k2, y in u.items():
                c = x * y
                key = []
                for (m, k), (n, l) in zip(k1, k2):
                    c = c * self.q ** (k * n)
                    key.append((m + n, k + l))
                _acc(out, tuple(key), c)
        return out

    def tpow(self, t, e, arity):
        out = {tuple((0, 0) for _ in range(arity)): ONE}
        for _ in range(e):
            out = self.tmul(out, t)
        return out

    def delta_n(self, x, arity=2):
        """Iterated coproduct into ``arity`` factors."""
        out = {}
        for (m, k), c in x.items():
            da, dg = self._gen_delta(arity)
            g_part = {tuple((0, k) for _ in range(arity)): ONE}
            t = self.tmul(self.tpow(da, m, arity), g_part)
            for key, v in t.items():
                _acc(out, key, c * v)
        return out

    def _gen_delta(self, arity):
        da = {}
        for j in range(arity):
            key = tuple((0, 1) if i < j else ((1, 0) if i == j else (0, 0)) for i in range(arity))
            da[key] = ONE
        dg = {tuple((0, 1) for _ in range(arity)): ONE}
        return da, dg

    def delta(self, x):
        return self.delta_n(x, 2)

    def eps(self, x):
        return sum((c for (m, k), c in x.items() if m == 0), ZERO)

    def S(self, x):
        """Antimultiplicative: S(a^m g^k) = g^-k (-g^-1 a)^m."""
        out = {}
        sa = {(1, -1): -self.q.inverse()}  # -g^-1 a = -q^-1 a g^-1
        for (m, k), c in x.items():
            t = self.mono(0, -k)
            for _ in range(m):
                t = self.mul(t, sa)
            for key, v in t.items():
                _acc(out, key, c * v)
        return out

    def S_a(self):
        """S(a) = -g^-1 a in normal form."""
        return self.mul(self.scale(self.ginv(), -1), self.a())

    # pairing with itself
    def pair(self, x, y):
        """<x, y> fixed by <a,a> = 1, <g,g> = q, <a,g> = <g,a> = 0, multiplicativity and counits."""
        tot = ZERO
        for (m, k), c in x.items():
            letters = ["a"] * m + (["g"] * k if k >= 0 else ["G"] * (-k))
            if not letters:
                tot = tot + c * self.eps(y)
                continue
            for key, v in self.delta_n(y, len(letters)).items():
                p = v
                for letter, mono in zip(letters, key):
                    p = p * self._pair_gen(letter, mono)
                    if not p:
                        break
                tot = tot + c * p
        return tot

    def _pair_gen(self, letter, mono):
        n, l = mono
        if letter == "a":
            return ONE if n == 1 else ZERO
        if n:
            return ZERO
        return self.q ** l if letter == "g" else self.q ** (-l)

    # verification
    def verify(self, cap=None, pairing=True):
        """Hopf laws on monomials with m + |k| <= cap (products on pairs within the cap)."""
        cap = self.degree_cap if cap is None else cap
        rep = HopfReport()
        monos = self.monomials(cap)
        q = self.q

        w = None
        if self.normal_form("ga") != {(1, 1): q}:
            w = "g a"
        elif self.mul(self.g(), self.ginv()) != self.one() or self.mul(self.ginv(), self.g()) != self.one():
            w = "g g^-1"
        elif self.mul(self.g(), self.a()) != self.scale(self.mul(self.a(), self.g()), q):
            w = "product formula"
        rep.add("relations", w)

        w = None
        lhs = self.tmul(self.delta(self.g()), self.delta(self.a()))
        rhs = self.tmul(self.delta(self.a()), self.delta(self.g()))
        if lhs != {k: q * v for k, v in rhs.items()}:
            w = "Delta(g)Delta(a) != q Delta(a)Delta(g)"
        rep.add("coproduct respects relations", w)

        w = None
        for mono in monos:
            x = {mono: ONE}
            d = self.delta(x)
            left = {}
            for (u, v), c in d.items():
                for key, z in self.delta({u: ONE}).items():
                    _acc(left, key + (v,), c * z)
            right = {}
            for (u, v), c in d.items():
                for key, z in self.delta({v: ONE}).items():
                    _acc(right, (u,) + key, c * z)
            if left != right:
                w = mono
                break
        rep.add("coassociativity", w)

        w = None
        for mono in monos:
            d = self.delta({mono: ONE})
            l, r = {}, {}
            for (u, v), c in d.items():
                if u[0] == 0:
                    _acc(l, v, c)
                if v[0] == 0:
                    _acc(r, u, c)
            if l != {mono: ONE} or r != {mono: ONE}:
                w = mono
                break
        rep.add("counit", w)

        w = None
        for mono in monos:
            d = self.delta({mono: ONE})
            l, r = {}, {}
            for (u, v), c in d.items():
                for key, z in self.mul(self.S({u: ONE}), {v: ONE}).items():
                    _acc(l, key, c * z)
                for key, z in self.mul({u: ONE}, self.S({v: ONE})).items():
                    _acc(r, key, c * z)
            target = self.scale(self.one(), self.eps({mono: ONE}))
            if l != target or r != target:
                w = mono
                break
        rep.add("antipode", w)

        pairs = [(x, y) for x in monos for y in monos if x[0] + y[0] + abs(x[1]) + abs(y[1]) <= cap]
        w = None
        for x, y in pairs:
            X, Y = {x: ONE}, {y: ONE}
            if self.delta(self.mul(X, Y)) != self.tmul(self.delta(X), self.delta(Y)):
                w = (x, y)
                break
            if self.eps(self.mul(X, Y)) != self.eps(X) * self.eps(Y):
                w = (x, y)
                break
            if self.S(self.mul(X, Y)) != self.mul(self.S(Y), self.S(X)):
                w = (x, y)
                break
        rep.add("structure maps compatible with products", w)

        if pairing:
            gens = {"a": self.a(), "g": self.g()}
            table = {("a", "a"): ONE, ("g", "g"): q, ("a", "g"): ZERO, ("g", "a"): ZERO}
            w = next((k for k, v in table.items() if self.pair(gens[k[0]], gens[k[1]]) != v), None)
            rep.add("pairing: generator table", w)
            w = None
            for x, y in pairs:
                for z in monos:
                    if x[0] + y[0] + z[0] + abs(x[1]) + abs(y[1]) + abs(z[1]) > cap:
                        continue
                    X, Y, Z = {x: ONE}, {y: ONE}, {z: ONE}
                    lhs = self.pair(Z, self.mul(X, Y))
                    rhs = sum((c * self.pair({u: ONE}, X) * self.pair({v: ONE}, Y)
                               for (u, v), c in self.delta(Z).items()), ZERO)
                    if lhs != rhs:
                        w = ("product in second argument", z, x, y)
                        break
                    lhs = self.pair(self.mul(X, Y), Z)
                    rhs = sum((c * self.pair(X, {u: ONE}) * self.pair(Y, {v: ONE})
                               for (u, v), c in self.delta(Z).items()), ZERO)
                    if lhs != rhs:
                        w = ("product in first argument", x, y, z)
                        break
                if w:
                    break
            rep.add("pairing: products", w)
            w = None
            for x in monos:
                X = {x: ONE}
                if self.pair(self.one(), X) != self.eps(X) or self.pair(X, self.one()) != self.eps(X):
                    w = ("counit", x)
                    break
            if w is None:
                for x, y in pairs:
                    X, Y = {x: ONE}, {y: ONE}
                    if self.pair(X, self.S(Y)) != self.pair(self.S(X), Y):
                        w = ("antipode", x, y)
                        break
            rep.add("pairing: counit and antipode", w)
        return rep


def uq_bplus(q, degree_cap=UQ_DEFAULT_CAP):
    return UqBPlus(q, degree_cap)
