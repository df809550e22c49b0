"""Finite racks.

A rack is a finite set {0..n-1} with a binary operation x > y (written
``x |> y`` in prose, ``table[x][y]`` here) such that every left translation
phi_x = (y -> x |> y) is a bijection and the self-distributive law

    x |> (y |> z) = (x |> y) |> (x |> z)

holds.  A quandle additionally satisfies x |> x = x.  Conjugacy classes of
a group are the motivating example: x |> y = x y x^{-1}.
"""

import json

from . import perm


class NotBijective(ValueError):
    """Some row map phi_x of the table is not a permutation."""


class NotSelfDistributive(ValueError):
    """Self-distributivity fails at a witness triple (x, y, z)."""


class SeedNotInGroup(ValueError):
    pass


class ClosureBudgetExceeded(RuntimeError):
    pass


class Rack:
    """Immutable rack on {0..n-1} with optional display labels.

    Use validate_rack / conjugacy_rack to construct; the constructor itself
    assumes the axioms (it asserts them cheaply in debug runs).
    """

    __slots__ = ("n", "table", "labels")

    def __init__(self, table, labels=None):
        self.n = len(table)
        self.table = tuple(tuple(row) for row in table)
        if labels is None:
            labels = [str(i) for i in range(self.n)]
        if len(labels) != self.n:
            raise ValueError("need %d labels, got %d" % (self.n, len(labels)))
        self.labels = tuple(str(l) for l in labels)

    def act(self, x, y):
        """x |> y."""
        return self.table[x][y]

    def phi(self, x):
        """The permutation y -> x |> y."""
        return tuple(self.table[x])

    def __eq__(self, other):
        return isinstance(other, Rack) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return "Rack(n=%d)" % self.n

    def is_quandle(self):
        return all(self.table[x][x] == x for x in range(self.n))

    def is_faithful(self):
        """x -> phi_x injective."""
        rows = {self.phi(x) for x in range(self.n)}
        return len(rows) == self.n

    def inner_group(self, cap=10 ** 6):
        """Closure of {phi_x} in Sym(X).

        Also re-checks the translation identity
        phi_x phi_y = phi_{x |> y} phi_x, which holds for every valid rack;
        a violation would mean the table was corrupted after validation.
        """
        for x in range(self.n):
            for y in range(self.n):
                lhs = perm.compose(self.phi(x), self.phi(y))
                rhs = perm.compose(self.phi(self.table[x][y]), self.phi(x))
                if lhs != rhs:
                    raise NotSelfDistributive((x, y, "translation identity"))
        try:
            els = perm.mulclose([self.phi(x) for x in range(self.n)], cap=cap)
        except RuntimeError as e:
            raise ClosureBudgetExceeded(str(e))
        return PermGroup(self.n, els, generators=[self.phi(x) for x in range(self.n)])

    def is_indecomposable(self):
        """Transitivity of the inner group on X.

        For finite racks this is equivalent to X not splitting as a disjoint
        union of proper subracks.
        """
        # the phi's generate a group, so the forward orbit of 0 under all
        # phi_x is already the inner-group orbit
        reached = {0}
        frontier = [0]
        while frontier:
            new = []
            for y in frontier:
                for x in range(self.n):
                    z = self.table[x][y]
                    if z not in reached:
                        reached.add(z)
                        new.append(z)
            frontier = new
        return len(reached) == self.n

    def properties(self):
        return {
            "quandle": self.is_quandle(),
            "faithful": self.is_faithful(),
            "indecomposable": self.is_indecomposable(),
        }

    def to_json(self):
        return {
            "n": self.n,
            "labels": list(self.labels),
            "table": [list(row) for row in self.table],
        }

    @classmethod
    def from_json(cls, obj):
        r = validate_rack(obj["n"], obj["table"])
        labels = obj.get("labels")
        if labels:
            return cls(r.table, labels)
        return r

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)


class PermGroup:
    """A set of permutations closed under composition, with generators."""

    __slots__ = ("degree", "elements", "generators")

    def __init__(self, degree, elements, generators=()):
        self.degree = degree
        self.elements = frozenset(elements)
        self.generators = tuple(generators)
        assert perm.identity(degree) in self.elements

    def __len__(self):
        return len(self.elements)

    def __contains__(self, p):
        return p in self.elements

    def is_transitive(self):
        orbit = {0}
        frontier = [0]
        while frontier:
            new = []
            for i in frontier:
                for g in self.generators or self.elements:
                    j = g[i]
                    if j not in orbit:
                        orbit.add(j)
                        new.append(j)
            frontier = new
        return len(orbit) == self.degree


def validate_rack(n, table):
    """Check both rack axioms on an n x n table and return the Rack.

    Raises NotBijective(x) naming the offending row, or
    NotSelfDistributive((x, y, z)) naming the offending triple.
    """
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError("table must be %d x %d" % (n, n))
    for x in range(n):
        row = table[x]
        if any(not isinstance(v, int) or not (0 <= v < n) for v in row):
            raise ValueError("entries must be in 0..%d" % (n - 1))
        if len(set(row)) != n:
            raise NotBijective(x)
    for x in range(n):
        for y in range(n):
            txy = table[x][y]
            for z in range(n):
                if table[x][table[y][z]] != table[txy][table[x][z]]:
                    raise NotSelfDistributive((x, y, z))
    return Rack(table)


def conjugacy_rack(group, seed):
    """The conjugacy class of seed in group with x |> y = x y x^{-1}.

    Elements are ordered lexicographically as permutation tuples, which fixes
    the labels and the table once and for all.
    """
    if seed not in group.elements:
        raise SeedNotInGroup(repr(seed))
    cls = sorted({perm.conjugate(g, seed) for g in group.elements})
    index = {p: i for i, p in enumerate(cls)}
    table = [[index[perm.conjugate(x, y)] for y in cls] for x in cls]
    labels = [perm.cycle_notation(p) for p in cls]
    r = validate_rack(len(cls), table)
    return Rack(r.table, labels), cls


def check_enveloping_map(rack, f_images, compose=perm.compose):
    """True iff f_x f_y = f_{x |> y} f_x for all x, y.

    f_images maps each rack element to something composable (default:
    permutation tuples).
    """
    for x in range(rack.n):
        for y in range(rack.n):
            lhs = compose(f_images[x], f_images[y])
            rhs = compose(f_images[rack.act(x, y)], f_images[x])
            if lhs != rhs:
                return False
    return True


def trivial_rack(n):
    """x |> y = y; decomposable and unfaithful for n >= 2."""
    return Rack([[y for y in range(n)] for _ in range(n)])


def dihedral_rack(n):
    """Z_n with x |> y = 2x - y mod n."""
    return Rack([[(2 * x - y) % n for y in range(n)] for x in range(n)])


def cyclic_affine_rack(n, a):
    """Z_n with x |> y = a*y + (1-a)*x mod n, for a a unit mod n."""
    from math import gcd

    if gcd(a, n) != 1:
        raise ValueError("a must be a unit mod n")
    return Rack([[(a * y + (1 - a) * x) % n for y in range(n)] for x in range(n)])


def disjoint_union(r1, r2):
    """Disjoint union with components acting trivially on each other."""
    n1, n2 = r1.n, r2.n
    n = n1 + n2
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x < n1 and y < n1:
                table[x][y] = r1.act(x, y)
            elif x >= n1 and y >= n1:
                table[x][y] = n1 + r2.act(x - n1, y - n1)
            else:
                table[x][y] = y
    return Rack(table, list(r1.labels) + [l + "'" for l in r2.labels])
