"""Finite groups given by Cayley tables."""

from itertools import permutations

__all__ = ["FiniteGroup", "cyclic_group", "symmetric_group", "SHIPPED_GROUPS"]


class FiniteGroup:
    """A finite group; ``table[i][j]`` is the index of ``g_i g_j``."""

    def __init__(self, names, table):
        n = len(names)
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError("Cayley table must be square and match the element names")
        self.names = tuple(names)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = n
        self._validate()
        self.identity = next(
            e for e in range(n) if all(self.table[e][g] == g == self.table[g][e] for g in range(n))
        )
        self.inverses = tuple(
            next(h for h in range(n) if self.table[g][h] == self.identity) for g in range(n)
        )

    def _validate(self):
        n = self.order
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise ValueError("Cayley table rows must be permutations (not a group)")
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError(f"Cayley table not associative at {a},{b},{c}")
        if not any(all(self.table[e][g] == g == self.table[g][e] for g in range(n)) for e in range(n)):
            raise ValueError("Cayley table has no identity")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def conjugate(self, g, h):
        """g h g^-1."""
        return self.table[self.table[g][h]][self.inverses[g]]

    def conjugacy_classes(self):
        seen, classes = set(), []
        for h in range(self.order):
            if h in seen:
                continue
            cls = sorted({self.conjugate(g, h) for g in range(self.order)})
            seen.update(cls)
            classes.append(cls)
        return classes

    def is_abelian(self):
        return all(self.table[a][b] == self.table[b][a] for a in range(self.order) for b in range(self.order))

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.names == other.names and self.table == other.table

    def __hash__(self):
        return hash((self.names, self.table))

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def cyclic_group(n):
    names = ["e"] + [f"g{k}" if k > 1 else "g" for k in range(1, n)]
    return FiniteGroup(names, [[(i + j) % n for j in range(n)] for i in range(n)])


def _cycle_name(p):
    n = len(p)
    seen, cycles = set(), []
    for s in range(n):
        if s in seen or p[s] == s:
            seen.add(s)
            continue
        c, x = [], s
        while x not in seen:
            seen.add(x)
            c.append(str(x + 1))
            x = p[x]
        cycles.append("(" + "".join(c) + ")")
    return "".join(cycles) or "e"


def symmetric_group(n):
    """S_n; composition (p q)(x) = p(q(x))."""
    perms = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup([_cycle_name(p) for p in perms], table)


SHIPPED_GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z3": lambda: cyclic_group(3),
    "Z4": lambda: cyclic_group(4),
    "S3": lambda: symmetric_group(3),
}
