"""Dense exact linear algebra over Q(i).

Elimination is Gauss-Jordan over the field with exact fractions.  The pivot in
each column is the first remaining row with a nonzero entry, so every output
(ranks, kernel bases, particular solutions) is deterministic.
"""

from .scalar import ZERO, ONE, as_scalar

__all__ = [
    "ExactMatrix",
    "InconsistentSystem",
    "rref",
    "rank",
    "nullspace_basis",
    "solve",
    "span_rank",
    "sparse_nullspace",
    "sparse_rank",
    "in_span",
    "coordinates_in",
    "mat_vec",
    "mat_mul",
    "identity",
    "zeros",
    "transpose",
    "is_zero_vector",
]


class InconsistentSystem(ValueError):
    """Raised by :func:`solve` when the right-hand side is not in the column space."""


class ExactMatrix:
    """Immutable rows x cols grid of Scalars."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries, cols=None):
        entries = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        for row in entries:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.cols == other.cols and self.entries == other.entries

    def __hash__(self):
        return hash((self.cols, self.entries))

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols})"

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            return ExactMatrix(mat_mul(self.entries, other.entries), other.cols)
        return mat_vec(self.entries, other)

    @property
    def T(self):
        return ExactMatrix(transpose(self.entries, self.cols), self.rows)

    def tolist(self):
        return [list(r) for r in self.entries]

    def rank(self):
        return rank(self)

    def nullspace(self):
        return nullspace_basis(self)


def _rows_of(m):
    if isinstance(m, ExactMatrix):
        return m.entries, m.cols
    m = [list(r) for r in m]
    return m, (len(m[0]) if m else 0)


def zeros(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(rows, cols=None):
    if cols is None:
        cols = len(rows[0]) if rows else 0
    return [[rows[i][j] for i in range(len(rows))] for j in range(cols)]


def mat_vec(rows, v):
    out = []
    for row in rows:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def mat_mul(a, b):
    n = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * n
        for k, x in enumerate(row):
            if not x:
                continue
            for j, y in enumerate(b[k]):
                if y:
                    acc[j] = acc[j] + x * y
        out.append(acc)
    return out


def is_zero_vector(v):
    return not any(v)


def _sparse(rows, cols):
    out = []
    for row in rows:
        d = {}
        for j in range(cols):
            x = row[j]
            if x:
                d[j] = as_scalar(x)
        out.append(d)
    return out


def _eliminate(srows, cols, ncoef=None):
    """In-place Gauss-Jordan on sparse rows; returns pivot columns.

    Only the first ``ncoef`` columns (default all) are eligible as pivots; any
    further columns ride along (augmented right-hand sides).
    """
    if ncoef is None:
        ncoef = cols
    pivots = []
    r = 0
    nrows = len(srows)
    for c in range(ncoef):
        p = None
        for i in range(r, nrows):
            if c in srows[i]:
                p = i
                break
        if p is None:
            continue
        srows[r], srows[p] = srows[p], srows[r]
        prow = srows[r]
        inv = prow[c].inverse()
        if inv != ONE:
            for k in prow:
                prow[k] = prow[k] * inv
        for i in range(nrows):
            if i == r:
                continue
            row = srows[i]
            f = row.get(c)
            if f is None:
                continue
            for k, x in prow.items():
                y = row.get(k, ZERO) - f * x
                if y:
                    row[k] = y
                else:
                    row.pop(k, None)
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rref(m):
    """Reduced row echelon form and pivot columns."""
    rows, cols = _rows_of(m)
    s = _sparse(rows, cols)
    pivots = _eliminate(s, cols)
    dense = [[row.get(j, ZERO) for j in range(cols)] for row in s]
    return dense, pivots


def rank(m):
    rows, cols = _rows_of(m)
    return len(_eliminate(_sparse(rows, cols), cols))


def nullspace_basis(m):
    """Basis of {x : m x = 0}, one vector per free column in increasing order.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns.
    """
    rows, cols = _rows_of(m)
    return sparse_nullspace(_sparse(rows, cols), cols)


def solve(m, b):
    """A particular solution x of m x = b.

    Free variables are set to zero.  Raises :class:`InconsistentSystem` when b
    is outside the column space.
    """
    rows, cols = _rows_of(m)
    if len(b) != len(rows):
        raise ValueError(f"right-hand side has length {len(b)}, expected {len(rows)}")
    aug = [list(r) + [as_scalar(x)] for r, x in zip(rows, b)]
    s = _sparse(aug, cols + 1)
    pivots = _eliminate(s, cols + 1, ncoef=cols)
    for row in s[len(pivots):]:
        if cols in row:
            raise InconsistentSystem("right-hand side is not in the column space")
    x = [ZERO] * cols
    for r, pc in enumerate(pivots):
        x[pc] = s[r].get(cols, ZERO)
    return x


def sparse_nullspace(srows, cols):
    """Kernel basis for a system given as sparse rows (dicts col -> scalar).

    The rows are consumed.  Same basis convention as :func:`nullspace_basis`.
    """
    pivots = _eliminate(srows, cols)
    pivot_set = set(pivots)
    basis = []
    for f in range(cols):
        if f in pivot_set:
            continue
        v = [ZERO] * cols
        v[f] = ONE
        for r, pc in enumerate(pivots):
            x = srows[r].get(f)
            if x is not None:
                v[pc] = -x
        basis.append(v)
    return basis


def sparse_rank(srows, cols):
    """Rank of a system given as sparse rows; the rows are consumed."""
    return len(_eliminate(srows, cols))


def span_rank(vectors):
    """Dimension of the span of a list of equal-length vectors."""
    if not vectors:
        return 0
    return rank(vectors)


def coordinates_in(vectors, target):
    """Coefficients c with sum c_i vectors[i] = target, or None if not in the span."""
    if not vectors:
        return [] if is_zero_vector(target) else None
    cols = transpose(vectors, len(target))
    try:
        return solve(cols, target)
    except InconsistentSystem:
        return None


def in_span(vectors, target):
    return coordinates_in(vectors, target) is not None
