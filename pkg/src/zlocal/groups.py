"""Finite groups as explicit Cayley tables, with the subgroup machinery the
classification sweep needs: subgroup enumeration, normality, cosets.

Desk scale (order <= 48 by default) justifies storing full multiplication
tables; products are O(1) lookups inside every inner loop downstream.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .errors import NotAGroup, NotContained, SizeBound

DEFAULT_ORDER_BOUND = 48


class FinGroup:
    """A finite group on indices 0..n-1 with a validated Cayley table."""

    def __init__(self, table, labels=None, name="G", perms=None, generators=None):
        table = np.asarray(table, dtype=np.int64)
        self.order = table.shape[0]
        self.table = table
        self.name = name
        self.perms = perms
        self.labels = labels or [str(i) for i in range(self.order)]
        self.identity = self._find_identity()
        self._validate()
        self.inverse = np.array(
            [int(np.nonzero(self.table[a] == self.identity)[0][0]) for a in range(self.order)]
        )
        self.generators = generators if generators is not None else self._find_generators()
        self._gen_words = None
        self._cache = {}

    def _find_identity(self):
        for e in range(self.order):
            if np.array_equal(self.table[e], np.arange(self.order)) and np.array_equal(
                self.table[:, e], np.arange(self.order)
            ):
                return e
        raise NotAGroup("no two-sided identity")

    def _validate(self):
        n = self.order
        t = self.table
        if t.shape != (n, n) or t.min() < 0 or t.max() >= n:
            raise NotAGroup("table entries out of range")
        # associativity: (ab)c == a(bc), vectorized over all triples
        left = t[t, :]  # left[a,b,c] = (ab)c
        right = t[:, t]  # right[a,b,c] = a(bc)
        if not np.array_equal(left, right):
            raise NotAGroup("multiplication table is not associative")
        for a in range(n):
            if self.identity not in t[a]:
                raise NotAGroup(f"element {a} has no inverse")

    def _find_generators(self):
        gens = []
        span = {self.identity}
        for g in range(self.order):
            if g in span:
                continue
            gens.append(g)
            span = self._closure(span | {g})
            if len(span) == self.order:
                break
        return gens

    def _closure(self, seed):
        out = set(seed) | {self.identity}
        frontier = list(out)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(out):
                    for c in (self.table[a, b], self.table[b, a]):
                        if c not in out:
                            out.add(int(c))
                            nxt.append(int(c))
            frontier = nxt
        return out

    def gen_words(self):
        """For each element, a word in the generators reaching it (BFS)."""
        if self._gen_words is None:
            words = {self.identity: ()}
            frontier = [self.identity]
            while frontier:
                nxt = []
                for a in frontier:
                    for gi, g in enumerate(self.generators):
                        b = int(self.table[a, g])
                        if b not in words:
                            words[b] = words[a] + (gi,)
                            nxt.append(b)
                frontier = nxt
            assert len(words) == self.order
            self._gen_words = [words[a] for a in range(self.order)]
        return self._gen_words

    def mul(self, a, b):
        return int(self.table[a, b])

    def inv(self, a):
        return int(self.inverse[a])

    def conj(self, h, n):
        """h n h^{-1}"""
        return int(self.table[self.table[h, n], self.inverse[h]])

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def exponent(self):
        return lcm(*[self.element_order(a) for a in range(self.order)])

    def conjugacy_classes(self):
        """Sorted list of sorted element tuples; identity class first."""
        seen = set()
        classes = []
        for a in range(self.order):
            if a in seen:
                continue
            cls = sorted({self.conj(h, a) for h in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return classes

    def centralizer(self, a):
        return tuple(h for h in range(self.order) if self.mul(h, a) == self.mul(a, h))

    def subgroup(self, elements) -> "Subgroup":
        return Subgroup(self, tuple(sorted(set(int(x) for x in elements))))

    def trivial_subgroup(self):
        return self.subgroup([self.identity])

    def full_subgroup(self):
        return self.subgroup(range(self.order))

    def generated_subgroup(self, gens):
        return self.subgroup(self._closure(set(int(g) for g in gens)))

    def subgroups(self, bound: int = DEFAULT_ORDER_BOUND):
        """All subgroups, canonical and sorted by (order, elements)."""
        if self.order > bound:
            raise SizeBound(f"|G| = {self.order} exceeds subgroup-enumeration bound {bound}")
        if "subgroups" in self._cache:
            return self._cache["subgroups"]
        found = {frozenset({self.identity})}
        frontier = [frozenset({self.identity})]
        while frontier:
            nxt = []
            for sub in frontier:
                for g in range(self.order):
                    if g in sub:
                        continue
                    new = frozenset(self._closure(set(sub) | {g}))
                    if new not in found:
                        found.add(new)
                        nxt.append(new)
            frontier = nxt
        subs = [self.subgroup(s) for s in found]
        subs.sort(key=lambda s: (s.order, s.elements))
        self._cache["subgroups"] = subs
        return subs

    def key(self):
        return (self.name, self.order, self.table.tobytes())

    def __repr__(self):
        return f"FinGroup({self.name}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    parent: FinGroup
    elements: tuple

    def __post_init__(self):
        G = self.parent
        els = set(self.elements)
        if G.identity not in els:
            raise NotAGroup("subgroup misses the identity")
        for a in self.elements:
            if G.inv(a) not in els:
                raise NotAGroup("subgroup not closed under inverse")
            for b in self.elements:
                if G.mul(a, b) not in els:
                    raise NotAGroup("subgroup not closed under product")

    @property
    def order(self):
        return len(self.elements)

    def contains(self, other: "Subgroup") -> bool:
        return set(other.elements) <= set(self.elements)

    def index_of(self, g) -> int:
        return self.elements.index(g)

    def is_normal_in(self, other: "Subgroup") -> bool:
        """Closure of self under conjugation by every element of `other`."""
        if not other.contains(self):
            raise NotContained("normality test requires containment")
        G = self.parent
        els = set(self.elements)
        return all(G.conj(h, n) in els for h in other.elements for n in self.elements)

    def as_group(self) -> FinGroup:
        """Re-indexed copy; element i is self.elements[i]."""
        idx = {g: i for i, g in enumerate(self.elements)}
        n = len(self.elements)
        table = [[idx[self.parent.mul(a, b)] for b in self.elements] for a in self.elements]
        return FinGroup(
            table,
            labels=[self.parent.labels[g] for g in self.elements],
            name=f"{self.parent.name}|sub{n}",
        )

    def __repr__(self):
        return f"Subgroup{self.elements}"


@dataclass(frozen=True)
class Transversal:
    """Left-coset representatives g_i of `subgroup` in its parent, identity first."""

    subgroup: Subgroup
    reps: tuple
    coset_of: tuple = field(default=(), compare=False)

    @property
    def parent(self):
        return self.subgroup.parent

    def decompose(self, g):
        """g = reps[i] * h with h in the subgroup; returns (i, h)."""
        G = self.parent
        i = self.coset_of[g]
        h = G.mul(G.inv(self.reps[i]), g)
        return i, h


def coset_data(G: FinGroup, H: Subgroup) -> Transversal:
    """Deterministic left transversal of H in G with the identity first."""
    if H.parent is not G and H.parent.key() != G.key():
        raise NotContained("subgroup belongs to a different group")
    reps = []
    coset_of = [-1] * G.order
    for g in range(G.order):
        if coset_of[g] >= 0:
            continue
        reps.append(g)
        i = len(reps) - 1
        for h in H.elements:
            coset_of[G.mul(g, h)] = i
    assert reps[0] == G.identity
    return Transversal(H, tuple(reps), tuple(coset_of))


def transversal_from_reps(G: FinGroup, H: Subgroup, reps) -> Transversal:
    """Build a transversal from user-chosen representatives (validated)."""
    coset_of = [-1] * G.order
    for i, r in enumerate(reps):
        for h in H.elements:
            g = G.mul(r, h)
            if coset_of[g] >= 0:
                raise NotAGroup("coset representatives overlap")
            coset_of[g] = i
    if any(c < 0 for c in coset_of):
        raise NotAGroup("coset representatives do not cover the group")
    return Transversal(H, tuple(reps), tuple(coset_of))


def is_normal_in(N: Subgroup, H: Subgroup) -> bool:
    return N.is_normal_in(H)


def conjugate(G: FinGroup, h, n):
    return G.conj(h, n)


# ---------------------------------------------------------------------------
# constructors


def _perm_mul(p, q):
    """(p*q)(x) = p(q(x)): apply q first."""
    return tuple(p[q[i]] for i in range(len(p)))


def group_from_permutations(generators, name="perm", degree=None):
    """Expand permutation generators to a full group, lexicographic element order."""
    degree = degree or (max(len(g) for g in generators) if generators else 1)
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(degree)):
            raise NotAGroup(f"{g} is not a permutation of 0..{degree - 1}")
        gens.append(g)
    ident = tuple(range(degree))
    els = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = _perm_mul(a, g)
                if b not in els:
                    els.add(b)
                    nxt.append(b)
                c = _perm_mul(g, a)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    elements = sorted(els)
    idx = {p: i for i, p in enumerate(elements)}
    table = [[idx[_perm_mul(p, q)] for q in elements] for p in elements]
    labels = [perm_label(p) for p in elements]
    gen_idx = [idx[g] for g in gens]
    return FinGroup(table, labels=labels, name=name, perms=elements, generators=gen_idx or None)


def perm_label(p):
    """Cycle notation on points 1..n."""
    seen = set()
    out = ""
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out += "(" + " ".join(str(x + 1) for x in cyc) + ")"
    return out or "e"


def cyclic_group(n: int) -> FinGroup:
    if n < 1:
        raise NotAGroup("cyclic order must be positive")
    if n == 1:
        return FinGroup([[0]], labels=["e"], name="C1", generators=[0])
    return group_from_permutations(
        [tuple((i + 1) % n for i in range(n))], name=f"C{n}", degree=n
    )


def symmetric_group(n: int) -> FinGroup:
    if n < 1 or n > 5:
        raise SizeBound("symmetric group supported for 1 <= n <= 5")
    if n == 1:
        return FinGroup([[0]], labels=["e"], name="S1")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple(list(range(1, n)) + [0]))
    return group_from_permutations(gens, name=f"S{n}", degree=n)


def alternating_group(n: int) -> FinGroup:
    if n < 3 or n > 5:
        raise SizeBound("alternating group supported for 3 <= n <= 5")
    gens = [(1, 2, 0) + tuple(range(3, n))]
    if n > 3:
        if n % 2 == 1:
            gens.append(tuple(range(1, n)) + (0,))
        else:
            gens.append((0,) + tuple(range(2, n)) + (1,))
    return group_from_permutations(gens, name=f"A{n}", degree=n)


def dihedral_group(n: int) -> FinGroup:
    """Symmetries of the n-gon, order 2n."""
    if n < 1:
        raise NotAGroup("dihedral parameter must be positive")
    if n <= 2:
        rot = tuple((i + 1) % n for i in range(n))
        # degenerate small cases realized on 2n points via the regular action
        return direct_product(cyclic_group(n), cyclic_group(2), name=f"D{n}")
    rot = tuple((i + 1) % n for i in range(n))
    flip = tuple((n - i) % n for i in range(n))
    return group_from_permutations([rot, flip], name=f"D{n}", degree=n)


def quaternion_group() -> FinGroup:
    """Q8 on basis 1, -1, i, -i, j, -j, k, -k."""
    names = ["e", "-e", "i", "-i", "j", "-j", "k", "-k"]
    unit = {"e": 0, "i": 2, "j": 4, "k": 6}

    def code(sym, sign):
        return unit[sym] + (0 if sign == 1 else 1)

    rule = {
        ("e", "e"): (1, "e"), ("e", "i"): (1, "i"), ("e", "j"): (1, "j"), ("e", "k"): (1, "k"),
        ("i", "e"): (1, "i"), ("j", "e"): (1, "j"), ("k", "e"): (1, "k"),
        ("i", "i"): (-1, "e"), ("j", "j"): (-1, "e"), ("k", "k"): (-1, "e"),
        ("i", "j"): (1, "k"), ("j", "i"): (-1, "k"),
        ("j", "k"): (1, "i"), ("k", "j"): (-1, "i"),
        ("k", "i"): (1, "j"), ("i", "k"): (-1, "j"),
    }
    table = np.zeros((8, 8), dtype=np.int64)
    for a in range(8):
        for b in range(8):
            sa, syma = (1 if a % 2 == 0 else -1), ["e", "e", "i", "i", "j", "j", "k", "k"][a]
            sb, symb = (1 if b % 2 == 0 else -1), ["e", "e", "i", "i", "j", "j", "k", "k"][b]
            sgn, sym = rule[(syma, symb)]
            table[a, b] = code(sym, sa * sb * sgn)
    return FinGroup(table, labels=names, name="Q8", generators=[2, 4])


def direct_product(G: FinGroup, H: FinGroup, name=None) -> FinGroup:
    n, m = G.order, H.order
    table = np.zeros((n * m, n * m), dtype=np.int64)
    for a, b in itertools.product(range(n), range(m)):
        for c, d in itertools.product(range(n), range(m)):
            table[a * m + b, c * m + d] = G.mul(a, c) * m + H.mul(b, d)
    labels = [f"({G.labels[a]},{H.labels[b]})" for a in range(n) for b in range(m)]
    return FinGroup(table, labels=labels, name=name or f"{G.name}x{H.name}")


_NAMED = {}


def named_group(name: str) -> FinGroup:
    """Parse names like C6, S4, A4, D4, Q8, and products like C2xC2."""
    key = name.strip()
    if key in _NAMED:
        return _NAMED[key]
    if "x" in key:
        parts = key.split("x")
        G = named_group(parts[0])
        for part in parts[1:]:
            G = direct_product(G, named_group(part))
        G.name = key
    elif key == "Q8":
        G = quaternion_group()
    elif key and key[0] in "CSAD" and key[1:].isdigit():
        n = int(key[1:])
        G = {"C": cyclic_group, "S": symmetric_group, "A": alternating_group, "D": dihedral_group}[
            key[0]
        ](n)
    else:
        raise NotAGroup(f"unknown named group {name!r}")
    _NAMED[key] = G
    return G


def build_group(source) -> FinGroup:
    """Group from a JSON-style spec: named, permutation generators, or table."""
    if isinstance(source, str):
        return named_group(source)
    kind = source.get("kind")
    if kind == "named":
        return named_group(source["name"])
    if kind == "perm":
        return group_from_permutations(
            source["generators"], name=source.get("name", "perm"), degree=source.get("degree")
        )
    if kind == "table":
        return FinGroup(source["table"], name=source.get("name", "table"))
    raise NotAGroup(f"unknown group spec kind {kind!r}")


def perm_index(G: FinGroup, mapping) -> int:
    """Index of a permutation (1-based cycle images given as 0-based tuple)."""
    if G.perms is None:
        raise NotAGroup("group has no permutation realization")
    return G.perms.index(tuple(mapping))
