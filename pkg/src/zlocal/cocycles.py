"""Normalized 2-cocycles on N and compatible epsilon-systems on H x N.

All tables take values in roots of unity of the coefficient field, so the
defining identities become linear conditions on exponent tables and the
whole enumeration runs over Z/d.  Class reduction quotients by coboundaries
whose values exist in the field (not merely in mu_d), which matches counting
over a field with enough roots; reported counts stay labeled as bounded
reductions.
"""

from __future__ import annotations

import itertools
from math import gcd, lcm

from . import intmod
from .errors import Inconsistent, InvalidData, OrderUnavailable, SizeBound
from .fields import Scalar, root_of_unity
from .groups import Subgroup
from .reporting import Report

COCYCLE_SIZE_BOUND = 8

LABEL_COCYCLE = "eq (6.1)"
LABEL_EPS_CROSSED = "eq (6.2)"
LABEL_EPS_MULT = "eq (6.3)"
LABEL_EPS_COMM = "eq (6.4)"


def _dlog_table(field, order: int, values):
    """Map roots of unity to exponents against the fixed primitive root."""
    w = field.root_of_unity_raw(order)
    powers = {}
    x = field.one()
    for k in range(order):
        powers.setdefault(_raw_key(field, x), k)
        x = field.mul(x, w)
    out = []
    for row in values:
        orow = []
        for v in row:
            key = _raw_key(field, v)
            if key not in powers:
                raise OrderUnavailable(f"value {v!r} is not a root of unity of order {order}")
            orow.append(powers[key])
        out.append(orow)
    return out


def _raw_key(field, v):
    return v if field.kind == "prime" else tuple(v)


class TwoCocycle:
    """A normalized 2-cocycle table gamma on a subgroup N (values = raw scalars)."""

    def __init__(self, subgroup: Subgroup, field, values, order=None, exp=None):
        self.subgroup = subgroup
        self.field = field
        self.values = [list(r) for r in values]
        self.order = order
        self.exp = exp
        n = subgroup.order
        if len(self.values) != n or any(len(r) != n for r in self.values):
            raise InvalidData("cocycle table has wrong shape")

    @classmethod
    def from_exponents(cls, subgroup, field, order, exp):
        w = field.root_of_unity_raw(order)
        pow_cache = [field.one()]
        for _ in range(order - 1):
            pow_cache.append(field.mul(pow_cache[-1], w))
        values = [[pow_cache[e % order] for e in row] for row in exp]
        return cls(subgroup, field, values, order=order, exp=[list(r) for r in exp])

    @classmethod
    def trivial(cls, subgroup, field):
        n = subgroup.order
        return cls.from_exponents(subgroup, field, 1, [[0] * n for _ in range(n)])

    def value(self, i, j):
        return self.values[i][j]

    def scalar(self, i, j) -> Scalar:
        return Scalar(self.field, self.values[i][j])

    def exponent_table(self, order: int):
        if self.exp is not None and self.order is not None and order % self.order == 0:
            k = order // self.order
            return [[(e * k) % order for e in row] for row in self.exp]
        return _dlog_table(self.field, order, self.values)

    def to_json(self):
        order = self.order or self.field.root_group_order()
        return {"order": order, "gamma_exp": self.exponent_table(order)}

    def __eq__(self, other):
        return (
            isinstance(other, TwoCocycle)
            and self.subgroup.elements == other.subgroup.elements
            and all(
                self.field.eq(a, b)
                for ra, rb in zip(self.values, other.values)
                for a, b in zip(ra, rb)
            )
        )

    def __repr__(self):
        return f"TwoCocycle(N order {self.subgroup.order})"


class EpsilonSystem:
    """Table epsilon_h(n) on H x N, paired with a cocycle on N."""

    def __init__(self, groupH: Subgroup, groupN: Subgroup, field, values, order=None, exp=None):
        self.groupH = groupH
        self.groupN = groupN
        self.field = field
        self.values = [list(r) for r in values]
        self.order = order
        self.exp = exp
        if len(self.values) != groupH.order or any(len(r) != groupN.order for r in self.values):
            raise InvalidData("epsilon table has wrong shape")

    @classmethod
    def from_exponents(cls, groupH, groupN, field, order, exp):
        w = field.root_of_unity_raw(order)
        pow_cache = [field.one()]
        for _ in range(order - 1):
            pow_cache.append(field.mul(pow_cache[-1], w))
        values = [[pow_cache[e % order] for e in row] for row in exp]
        return cls(groupH, groupN, field, values, order=order, exp=[list(r) for r in exp])

    @classmethod
    def trivial(cls, groupH, groupN, field):
        return cls.from_exponents(
            groupH, groupN, field, 1, [[0] * groupN.order for _ in range(groupH.order)]
        )

    def value(self, hpos, npos):
        return self.values[hpos][npos]

    def value_by_elements(self, h, n):
        return self.values[self.groupH.elements.index(h)][self.groupN.elements.index(n)]

    def exponent_table(self, order: int):
        if self.exp is not None and self.order is not None and order % self.order == 0:
            k = order // self.order
            return [[(e * k) % order for e in row] for row in self.exp]
        return _dlog_table(self.field, order, self.values)

    def to_json(self):
        order = self.order or self.field.root_group_order()
        return {"order": order, "epsilon_exp": self.exponent_table(order)}

    def __repr__(self):
        return f"EpsilonSystem(H order {self.groupH.order}, N order {self.groupN.order})"


# ---------------------------------------------------------------------------
# checkers


def check_cocycle(gamma: TwoCocycle) -> Report:
    N = gamma.subgroup
    G = N.parent
    F = gamma.field
    pos = {g: i for i, g in enumerate(N.elements)}
    epos = pos[G.identity]
    rep = Report("cocycle")
    viol = []
    for i, n in enumerate(N.elements):
        for j, m in enumerate(N.elements):
            for k, r in enumerate(N.elements):
                nm = pos[G.mul(n, m)]
                mr = pos[G.mul(m, r)]
                lhs = F.mul(gamma.value(i, j), gamma.value(nm, k))
                rhs = F.mul(gamma.value(i, mr), gamma.value(j, k))
                if not F.eq(lhs, rhs):
                    viol.append((G.labels[n], G.labels[m], G.labels[r]))
    rep.add("cocycle identity", LABEL_COCYCLE, not viol, viol)
    norm = [
        (G.labels[n],)
        for i, n in enumerate(N.elements)
        if not (F.eq(gamma.value(i, epos), F.one()) and F.eq(gamma.value(epos, i), F.one()))
    ]
    rep.add("cocycle normalization", LABEL_COCYCLE, not norm, norm)
    zeroes = [
        (i, j) for i in range(N.order) for j in range(N.order) if F.is_zero(gamma.value(i, j))
    ]
    rep.add("cocycle values nonzero", LABEL_COCYCLE, not zeroes, zeroes)
    return rep


def check_epsilon(gamma: TwoCocycle, eps: EpsilonSystem) -> Report:
    H, N = eps.groupH, eps.groupN
    G = H.parent
    F = eps.field
    hpos = {g: i for i, g in enumerate(H.elements)}
    npos = {g: i for i, g in enumerate(N.elements)}
    rep = Report("epsilon")
    v62, v63, v64, vnorm = [], [], [], []
    for a, g in enumerate(H.elements):
        for b, h in enumerate(H.elements):
            gh = hpos[G.mul(g, h)]
            for i, n in enumerate(N.elements):
                hnh = npos[G.conj(h, n)]
                lhs = eps.value(gh, i)
                rhs = F.mul(eps.value(a, hnh), eps.value(b, i))
                if not F.eq(lhs, rhs):
                    v62.append((G.labels[g], G.labels[h], G.labels[n]))
    for b, h in enumerate(H.elements):
        for i, n in enumerate(N.elements):
            for j, m in enumerate(N.elements):
                nm = npos[G.mul(n, m)]
                hnh = npos[G.conj(h, n)]
                hmh = npos[G.conj(h, m)]
                lhs = F.mul(eps.value(b, nm), gamma.value(i, j))
                rhs = F.mul(
                    F.mul(eps.value(b, i), eps.value(b, j)), gamma.value(hnh, hmh)
                )
                if not F.eq(lhs, rhs):
                    v63.append((G.labels[h], G.labels[n], G.labels[m]))
    for i, n in enumerate(N.elements):
        for j, m in enumerate(N.elements):
            nmn = npos[G.conj(n, m)]
            lhs = gamma.value(i, j)
            rhs = F.mul(eps.value(hpos[n], j), gamma.value(nmn, i))
            if not F.eq(lhs, rhs):
                v64.append((G.labels[n], G.labels[m]))
    epos_n = npos[G.identity]
    epos_h = hpos[G.identity]
    for a, g in enumerate(H.elements):
        if not F.eq(eps.value(a, epos_n), F.one()):
            vnorm.append((G.labels[g], "e"))
    for i, n in enumerate(N.elements):
        if not F.eq(eps.value(epos_h, i), F.one()):
            vnorm.append(("e", G.labels[n]))
    rep.add("epsilon crossed-homomorphism", LABEL_EPS_CROSSED, not v62, v62)
    rep.add("epsilon twisted multiplicativity", LABEL_EPS_MULT, not v63, v63)
    rep.add("epsilon commutation", LABEL_EPS_COMM, not v64, v64)
    rep.add("epsilon normalization", LABEL_EPS_CROSSED, not vnorm, vnorm)
    return rep


# ---------------------------------------------------------------------------
# coboundaries and class reduction


def coboundary(N: Subgroup, field, b) -> TwoCocycle:
    """del b (n, m) = b(n) b(m) / b(nm) for b with b(identity) = 1."""
    G = N.parent
    pos = {g: i for i, g in enumerate(N.elements)}
    epos = pos[G.identity]
    braw = [x.raw if isinstance(x, Scalar) else x for x in b]
    if not field.eq(braw[epos], field.one()):
        raise InvalidData("b(identity) must be 1")
    n = N.order
    values = [
        [
            field.div(field.mul(braw[i], braw[j]), braw[pos[G.mul(N.elements[i], N.elements[j])]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    return TwoCocycle(N, field, values)


def _nonid_positions(N: Subgroup):
    G = N.parent
    return [i for i, g in enumerate(N.elements) if g != G.identity]


def _pair_vars(N: Subgroup):
    nz = _nonid_positions(N)
    pairs = [(i, j) for i in nz for j in nz]
    index = {p: k for k, p in enumerate(pairs)}
    return pairs, index


def _cocycle_equations(N: Subgroup, pairs, index):
    """Rows of the linear cocycle identity in exponent space."""
    G = N.parent
    pos = {g: i for i, g in enumerate(N.elements)}
    epos = pos[G.identity]
    nz = _nonid_positions(N)
    rows = []
    for i in nz:
        for j in nz:
            for k in nz:
                row = [0] * len(pairs)

                def bump(a, b, c):
                    if a != epos and b != epos:
                        row[index[(a, b)]] += c

                nm = pos[G.mul(N.elements[i], N.elements[j])]
                mr = pos[G.mul(N.elements[j], N.elements[k])]
                bump(i, j, 1)
                bump(nm, k, 1)
                bump(i, mr, -1)
                bump(j, k, -1)
                if any(row):
                    rows.append(row)
    return rows


def _coboundary_image_gens(N: Subgroup, pairs, index, modulus):
    """Images of the unit b-vectors under del, as exponent rows mod modulus."""
    G = N.parent
    pos = {g: i for i, g in enumerate(N.elements)}
    epos = pos[G.identity]
    nz = _nonid_positions(N)
    gens = []
    for v in nz:
        row = [0] * len(pairs)
        for (i, j), k in index.items():
            c = 0
            if i == v:
                c += 1
            if j == v:
                c += 1
            if pos[G.mul(N.elements[i], N.elements[j])] == v:
                c -= 1
            row[k] = c % modulus
        gens.append(row)
    return gens


def enumerate_cocycles(
    N: Subgroup, field, value_order: int, size_bound: int = COCYCLE_SIZE_BOUND
):
    """Representatives of normalized mu_d-valued cocycles modulo coboundaries
    realizable in the field; deterministic lexicographic representatives."""
    if N.order > size_bound:
        raise SizeBound(f"|N| = {N.order} exceeds cocycle enumeration bound {size_bound}")
    d = value_order
    if not field.has_root_of_order(d):
        raise OrderUnavailable(f"{field!r} lacks roots of unity of order {d}")
    n = N.order
    if n == 1 or d == 1:
        return [TwoCocycle.trivial(N, field)]
    pairs, index = _pair_vars(N)
    eqs = _cocycle_equations(N, pairs, index)
    ker = intmod.kernel_mod(eqs, d) if eqs else intmod._unit_rows(len(pairs))
    K = field.root_group_order()
    scale = K // d
    big_gens = [[(x * scale) % K for x in g] for g in ker]
    cob = _coboundary_image_gens(N, pairs, index, K)
    lattice = [[scale * int(c == k) for c in range(len(pairs))] for k in range(len(pairs))]
    reducers = intmod.span_intersection(cob, lattice, K, len(pairs))
    reps = intmod.enumerate_quotient(big_gens, reducers, K, len(pairs))
    out = []
    for rep in reps:
        exp = [[0] * n for _ in range(n)]
        for (i, j), k in index.items():
            assert rep[k] % scale == 0
            exp[i][j] = (rep[k] // scale) % d
        out.append(TwoCocycle.from_exponents(N, field, d, exp))
    for gamma in out:
        assert check_cocycle(gamma).ok
    return out


def cohomologous(gamma1: TwoCocycle, gamma2: TwoCocycle, value_order: int):
    """A witness b valued in mu_{value_order} with gamma1 = gamma2 * del b, or None."""
    N = gamma1.subgroup
    field = gamma1.field
    d = value_order
    if not field.has_root_of_order(d):
        raise OrderUnavailable(f"{field!r} lacks roots of unity of order {d}")
    try:
        e1 = gamma1.exponent_table(d)
        e2 = gamma2.exponent_table(d)
    except OrderUnavailable:
        return None
    pairs, index = _pair_vars(N)
    nz = _nonid_positions(N)
    var_of = {v: k for k, v in enumerate(nz)}
    G = N.parent
    pos = {g: i for i, g in enumerate(N.elements)}
    A, b = [], []
    for (i, j), _k in index.items():
        row = [0] * len(nz)
        row[var_of[i]] += 1
        row[var_of[j]] += 1
        prod = pos[G.mul(N.elements[i], N.elements[j])]
        if prod in var_of:
            row[var_of[prod]] -= 1
        A.append(row)
        b.append((e1[i][j] - e2[i][j]) % d)
    x = intmod.solve_mod(A, b, d) if A else [0] * len(nz)
    if x is None:
        return None
    w = root_of_unity(field, d)
    out = [Scalar(field, field.one())] * N.order
    for v, k in var_of.items():
        out[v] = w ** x[k]
    # verify the witness exactly
    delb = coboundary(N, field, out)
    for i in range(N.order):
        for j in range(N.order):
            if not field.eq(gamma1.value(i, j), field.mul(gamma2.value(i, j), delb.value(i, j))):
                return None
    return out


def klein_sign_cocycle(N: Subgroup, field, u: int, v: int) -> TwoCocycle:
    """The sign-cocycle family on a Klein four-subgroup.

    With N = {1, a, b, ab} (a, b the first two non-identity elements in
    canonical order), gamma(a^x1 b^x2, a^y1 b^y2) = u^(x2 y1) * v^(x1 y2)
    for signs u, v in {+1, -1}.
    """
    G = N.parent
    if N.order != 4 or any(G.element_order(g) != 2 for g in N.elements if g != G.identity):
        raise InvalidData("sign cocycle requires a Klein four-group")
    nz = [g for g in N.elements if g != G.identity]
    a, b = nz[0], nz[1]
    coords = {G.identity: (0, 0), a: (1, 0), b: (0, 1), G.mul(a, b): (1, 1)}
    exp = [[0] * 4 for _ in range(4)]
    ue = 0 if u == 1 else 1
    ve = 0 if v == 1 else 1
    for i, g in enumerate(N.elements):
        for j, h in enumerate(N.elements):
            (x1, x2), (y1, y2) = coords[g], coords[h]
            exp[i][j] = (ue * x2 * y1 + ve * x1 * y2) % 2
    return TwoCocycle.from_exponents(N, field, 2, exp)


# ---------------------------------------------------------------------------
# epsilon systems


def epsilon_from_gamma_on_N(gamma: TwoCocycle) -> EpsilonSystem:
    """The forced values eps_n(m) = gamma(n,m) / gamma(n m n^{-1}, n) on N x N."""
    N = gamma.subgroup
    G = N.parent
    F = gamma.field
    pos = {g: i for i, g in enumerate(N.elements)}
    values = [
        [
            F.div(gamma.value(i, j), gamma.value(pos[G.conj(n, m)], i))
            for j, m in enumerate(N.elements)
        ]
        for i, n in enumerate(N.elements)
    ]
    return EpsilonSystem(N, N, F, values)


def _characters(N: Subgroup, order: int, field):
    """Exponent rows of all homomorphisms N -> mu_order."""
    G = N.parent
    d = gcd(order, _subgroup_exponent(N))
    # greedy generating set
    gens = []
    span = {G.identity}
    for g in N.elements:
        if g not in span:
            gens.append(g)
            span = G._closure(span | {g}) & set(N.elements)
    out = set()

    def try_assign(assign):
        val = {G.identity: 0}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = G.mul(a, g)
                    x = (val[a] + assign[g]) % order
                    if b in val:
                        if val[b] != x:
                            return None
                    else:
                        val[b] = x
                        nxt.append(b)
            frontier = nxt
        for a in N.elements:
            for bnd in N.elements:
                if (val[a] + val[bnd]) % order != val[G.mul(a, bnd)] % order:
                    return None
        return tuple(val[g] for g in N.elements)

    step = order // d
    for combo in itertools.product(*[range(0, order, step) for _ in gens]):
        assign = {g: c for g, c in zip(gens, combo)}
        row = try_assign(assign)
        if row is not None:
            out.add(row)
    return sorted(out)


def _subgroup_exponent(N: Subgroup) -> int:
    G = N.parent
    return lcm(*[G.element_order(g) for g in N.elements])


def enumerate_epsilons(H: Subgroup, N: Subgroup, gamma: TwoCocycle, value_order: int):
    """All epsilon-systems with values in mu_{value_order} compatible with gamma.

    Rows over N are forced; the remaining rows are solved coset by coset and
    propagated through the crossed-homomorphism identity, with a final exact
    verification of every identity.
    """
    G = H.parent
    if not set(N.elements) <= set(H.elements):
        raise InvalidData("N must be contained in H")
    if not N.is_normal_in(H):
        raise InvalidData("N must be normal in H")
    if not check_cocycle(gamma).ok:
        raise InvalidData("gamma is not a valid normalized cocycle")
    field = gamma.field
    L = lcm(value_order, 1)
    if not field.has_root_of_order(L):
        raise OrderUnavailable(f"{field!r} lacks roots of unity of order {L}")
    gx = gamma.exponent_table(L)
    npos = {g: i for i, g in enumerate(N.elements)}
    nn = N.order

    def conj_row(row, h):
        # row for h-conjugated arguments: n -> row[h n h^{-1}]
        return tuple(row[npos[G.conj(h, n)]] for n in N.elements)

    # forced rows on N
    rows = {}
    for i, n in enumerate(N.elements):
        rows[n] = tuple(
            (gx[i][j] - gx[npos[G.conj(n, m)]][i]) % L for j, m in enumerate(N.elements)
        )

    def close(assigned):
        # propagate eps_{gh}(n) = eps_g(h n h^{-1}) eps_h(n); None on contradiction
        changed = True
        while changed:
            changed = False
            keys = list(assigned)
            for g in keys:
                rg = assigned[g]
                for h in keys:
                    rh = assigned[h]
                    k = G.mul(g, h)
                    want = tuple(
                        (rg[npos[G.conj(h, n)]] + rh[i]) % L for i, n in enumerate(N.elements)
                    )
                    if k in assigned:
                        if assigned[k] != want:
                            return None
                    else:
                        assigned[k] = want
                        changed = True
        return assigned

    rows = close(rows)
    if rows is None:
        raise Inconsistent("forced epsilon rows on N contradict the crossed identity")

    chars = _characters(N, L, field)
    nz = [i for i, g in enumerate(N.elements) if g != G.identity]
    var_of = {v: k for k, v in enumerate(nz)}

    def particular_row(h):
        # solve x(n)+x(m)-x(nm) = gx(n,m) - gx(hnh^-1, hmh^-1)  mod L
        A, b = [], []
        for i in nz:
            for j in nz:
                row = [0] * len(nz)
                row[var_of[i]] += 1
                row[var_of[j]] += 1
                prod = npos[G.mul(N.elements[i], N.elements[j])]
                if prod in var_of:
                    row[var_of[prod]] -= 1
                A.append(row)
                hih = npos[G.conj(h, N.elements[i])]
                hjh = npos[G.conj(h, N.elements[j])]
                b.append((gx[i][j] - gx[hih][hjh]) % L)
        x = intmod.solve_mod(A, b, L) if A else [0] * len(nz)
        if x is None:
            return None
        full = [0] * nn
        for v, k in var_of.items():
            full[v] = x[k]
        return tuple(full)

    results = set()

    def backtrack(assigned):
        missing = [h for h in H.elements if h not in assigned]
        if not missing:
            results.add(tuple(assigned[h] for h in H.elements))
            return
        h0 = missing[0]
        part = particular_row(h0)
        if part is None:
            return
        for chi in chars:
            cand = tuple((part[k] + chi[k]) % L for k in range(nn))
            trial = dict(assigned)
            trial[h0] = cand
            trial = close(trial)
            if trial is not None:
                backtrack(trial)

    backtrack(dict(rows))
    out = []
    for tab in sorted(results):
        eps = EpsilonSystem.from_exponents(H, N, field, L, [list(r) for r in tab])
        if check_epsilon(gamma, eps).ok:
            out.append(eps)
    return out
