"""Independent brute-force oracles used by the tests.

They share no code with the library beyond reading structure constants, and
use sympy for exact ranks.
"""

from itertools import combinations, permutations
from math import comb

import sympy


def _q(x):
    return sympy.Rational(x.re.numerator, x.re.denominator) + sympy.I * sympy.Rational(x.im.numerator, x.im.denominator)


def perm_sign(p):
    p = list(p)
    s = 1
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] > p[j]:
                s = -s
    return s


def ce_matrix(g, action, k):
    """Matrix of the CE coboundary C^k -> C^(k+1) in the increasing-tuple basis.

    ``action[i]`` is the sympy matrix of the module action of e_i (module dim d).
    Built from the formula
      dc(x_0..x_k) = sum_i (-1)^i x_i c(..^i..) + sum_{i<j} (-1)^(i+j) c([x_i,x_j], ..^i..^j..).
    """
    n = g.dim
    d = action[0].shape[0] if action else 1
    src = list(combinations(range(n), k))
    dst = list(combinations(range(n), k + 1))
    sidx = {t: a for a, t in enumerate(src)}
    M = sympy.zeros(len(dst) * d, len(src) * d)

    def add_value(row_block, tup, coeff, vec_map):
        # c(tup) in terms of stored components, with alternating sign
        if len(set(tup)) < len(tup):
            return
        order = sorted(range(len(tup)), key=lambda i: tup[i])
        sign = perm_sign(order)
        key = tuple(sorted(tup))
        col = sidx[key]
        for a in range(d):
            for b in range(d):
                v = vec_map[a, b]
                if v:
                    M[row_block * d + a, col * d + b] += sign * coeff * v

    for r, T in enumerate(dst):
        for i in range(k + 1):
            rest = T[:i] + T[i + 1:]
            add_value(r, rest, (-1) ** i, action[T[i]])
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = T[:i] + T[i + 1:j] + T[j + 1:]
                for m in range(n):
                    c = g.structure_constant(T[i], T[j], m)
                    if c:
                        add_value(r, (m,) + rest, (-1) ** (i + j) * _q(c), sympy.eye(d))
    return M


def betti_oracle(g, matrices=None):
    n = g.dim
    if matrices is None:
        action = [sympy.zeros(1, 1) for _ in range(n)]
    else:
        action = [sympy.Matrix([[_q(x) for x in row] for row in m]) for m in matrices]
    d = action[0].shape[0]
    ranks = [ce_matrix(g, action, k).rank() if k < n else 0 for k in range(n + 1)]
    return [comb(n, k) * d - ranks[k] - (ranks[k - 1] if k else 0) for k in range(n + 1)]


def universal_dims_oracle(algebra, k):
    """dim Omega^k of the universal calculus: dim A * (dim A - 1)^k."""
    return algebra.dim * (algebra.dim - 1) ** k


def jet_dims_oracle(n):
    """(dim J^1, dim O^1) for Q[x]/(x^n), P = A, by the explicit quotient of A (x) A
    by the span of x^(a+b) (x) 1 - x^b (x) x^a - x^a (x) x^b + 1 (x) x^(a+b)."""
    N = n * n

    def idx(i, j):
        return i * n + j

    rows = []
    for a in range(n):
        for b in range(n):
            for p in range(n):
                v = [0] * N
                if a + b < n:
                    v[idx(a + b, p)] += 1
                if a + p < n:
                    v[idx(b, a + p)] -= 1
                if b + p < n:
                    v[idx(a, b + p)] -= 1
                if a + b + p < n:
                    v[idx(0, a + b + p)] += 1
                rows.append(v)
    rel = sympy.Matrix(rows).rank()
    jet = N - rel
    return jet, jet - n
