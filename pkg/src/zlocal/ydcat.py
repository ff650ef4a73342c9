"""The ambient braided category: Yetter-Drinfeld modules over kG.

Objects are G-graded spaces with a G-action permuting grades by conjugation.
Basis order is arbitrary; each basis vector carries its grade, so tensor
products are plain Kronecker products and all associators are identities.

The braiding sends v (x) w to (g.w) (x) v for v of grade g; the twist acts on
the grade-g block by the action of g.  Both are candidate structures verified
by the test suite (balancing, naturality), never assumed.
"""

from __future__ import annotations

import numpy as np

from . import linalg as la
from .errors import GroupMismatch, NonSplit, NotSemisimpleField, ShapeMismatch
from .groups import FinGroup, Subgroup, coset_data
from .reporting import Report


class YDModule:
    """A finite-dimensional Yetter-Drinfeld module over kG."""

    def __init__(self, group: FinGroup, field, grade_of, action=None, maker=None, name="V"):
        self.group = group
        self.field = field
        self.grade_of = np.asarray(grade_of, dtype=np.int64)
        self.dim = len(self.grade_of)
        self.name = name
        self._act = {group.identity: la.eye(field, self.dim)}
        if action:
            for g, M in action.items():
                self._act[int(g)] = M
        self._maker = maker

    def action(self, g):
        g = int(g)
        if g in self._act:
            return self._act[g]
        if self._maker is not None:
            M = self._maker(g)
        else:
            # gen_words express g as a left-to-right product of generators
            M = la.eye(self.field, self.dim)
            for gi in self.group.gen_words()[g]:
                M = la.mul(self.field, M, self._act[self.group.generators[gi]])
        self._act[g] = M
        return M

    def action_inv(self, g):
        return self.action(self.group.inv(g))

    @property
    def grade_dims(self):
        out = np.zeros(self.group.order, dtype=np.int64)
        for g in self.grade_of:
            out[g] += 1
        return out

    def grade_indices(self, g):
        return np.nonzero(self.grade_of == g)[0]

    def same_context(self, other) -> bool:
        return self.group.key() == other.group.key() and self.field == other.field

    def __repr__(self):
        return f"YDModule({self.name}, dim={self.dim})"


class YDMorphism:
    """A grade-preserving, equivariant matrix between YD modules."""

    def __init__(self, source: YDModule, target: YDModule, matrix):
        self.source = source
        self.target = target
        self.matrix = matrix
        if matrix.shape != (target.dim, source.dim):
            raise ShapeMismatch(f"matrix {matrix.shape} vs ({target.dim},{source.dim})")

    def compose(self, other: "YDMorphism") -> "YDMorphism":
        return YDMorphism(
            other.source, self.target, la.mul(self.source.field, self.matrix, other.matrix)
        )

    def __repr__(self):
        return f"YDMorphism({self.source.name} -> {self.target.name})"


def unit_object(G: FinGroup, field) -> YDModule:
    return YDModule(
        G, field, [G.identity], maker=lambda g: la.eye(field, 1), name="1"
    )


def check_yd(V: YDModule, full: bool = False) -> Report:
    """Validate the grading/action compatibility; `full` checks all products."""
    G, F = V.group, V.field
    rep = Report(f"yd:{V.name}")
    ident_ok = la.eq(F, V.action(G.identity), la.eye(F, V.dim))
    rep.add("action at identity", "YD compatibility", ident_ok)
    grade_viol = []
    for h in range(G.order):
        M = V.action(h)
        for j in range(V.dim):
            tgt = G.conj(h, int(V.grade_of[j]))
            for i in range(V.dim):
                if V.grade_of[i] != tgt and not F.is_zero(M[i, j]):
                    grade_viol.append((G.labels[h], G.labels[int(V.grade_of[j])]))
                    break
    rep.add("action permutes grades by conjugation", "YD compatibility", not grade_viol, grade_viol)
    mult_viol = []
    pairs = (
        [(a, b) for a in range(G.order) for b in range(G.order)]
        if full
        else [(s, b) for s in G.generators for b in range(G.order)]
    )
    for a, b in pairs:
        lhs = la.mul(F, V.action(a), V.action(b))
        if not la.eq(F, lhs, V.action(G.mul(a, b))):
            mult_viol.append((G.labels[a], G.labels[b]))
    rep.add("action is multiplicative", "YD compatibility", not mult_viol, mult_viol)
    inv_viol = []
    for h in G.generators:
        if la.inv(F, V.action(h)) is None:
            inv_viol.append(G.labels[h])
    rep.add("action matrices invertible", "YD compatibility", not inv_viol, inv_viol)
    return rep


def tensor(V: YDModule, W: YDModule) -> YDModule:
    if not V.same_context(W):
        raise GroupMismatch("tensor requires the same group and field")
    G = V.group
    grades = [G.mul(int(a), int(b)) for a in V.grade_of for b in W.grade_of]

    def maker(g, V=V, W=W):
        return la.kron(V.field, V.action(g), W.action(g))

    return YDModule(G, V.field, grades, maker=maker, name=f"({V.name}(x){W.name})")


def braiding(V: YDModule, W: YDModule) -> YDMorphism:
    """c(v (x) w) = (g.w) (x) v for v of grade g."""
    if not V.same_context(W):
        raise GroupMismatch("braiding requires the same group and field")
    F = V.field
    VW = tensor(V, W)
    WV = tensor(W, V)
    C = la.zeros(F, WV.dim, VW.dim)
    acts = {}
    for j in range(V.dim):
        g = int(V.grade_of[j])
        if g not in acts:
            acts[g] = W.action(g)
        A = acts[g]
        for l in range(W.dim):
            col = j * W.dim + l
            for k in range(W.dim):
                if not F.is_zero(A[k, l]):
                    C[k * V.dim + j, col] = A[k, l]
    return YDMorphism(VW, WV, C)


def braiding_inv(V: YDModule, W: YDModule) -> YDMorphism:
    """Inverse of braiding(V, W): W (x) V -> V (x) W."""
    F = V.field
    VW = tensor(V, W)
    WV = tensor(W, V)
    C = la.zeros(F, VW.dim, WV.dim)
    acts = {}
    for j in range(V.dim):
        g = int(V.grade_of[j])
        ginv = V.group.inv(g)
        if ginv not in acts:
            acts[ginv] = W.action(ginv)
        A = acts[ginv]
        for k in range(W.dim):
            col = k * V.dim + j
            for l in range(W.dim):
                if not F.is_zero(A[l, k]):
                    C[j * W.dim + l, col] = A[l, k]
    return YDMorphism(WV, VW, C)


def twist(V: YDModule) -> YDMorphism:
    """theta acts on the grade-g block by the action of g."""
    F = V.field
    T = la.zeros(F, V.dim, V.dim)
    for j in range(V.dim):
        col = V.action(int(V.grade_of[j]))[:, j]
        T[:, j] = col
    return YDMorphism(V, V, T)


def dual(V: YDModule) -> YDModule:
    """(V*)_g = (V_{g^{-1}})*, action by inverse-transpose."""
    G, F = V.group, V.field
    grades = [G.inv(int(g)) for g in V.grade_of]

    def maker(g, V=V):
        return V.action(V.group.inv(g)).T.copy()

    return YDModule(G, F, grades, maker=maker, name=f"{V.name}*")


def evaluation(V: YDModule) -> YDMorphism:
    """ev: V* (x) V -> 1, f (x) v -> f(v)."""
    F = V.field
    Vd = dual(V)
    src = tensor(Vd, V)
    one = unit_object(V.group, F)
    M = la.zeros(F, 1, src.dim)
    for i in range(V.dim):
        M[0, i * V.dim + i] = 1 if F.kind == "prime" else F.one()
    return YDMorphism(src, one, M)


def coevaluation(V: YDModule) -> YDMorphism:
    """coev: 1 -> V (x) V*, 1 -> sum v_i (x) v_i*."""
    F = V.field
    Vd = dual(V)
    tgt = tensor(V, Vd)
    one = unit_object(V.group, F)
    M = la.zeros(F, tgt.dim, 1)
    for i in range(V.dim):
        M[i * V.dim + i, 0] = 1 if F.kind == "prime" else F.one()
    return YDMorphism(one, tgt, M)


def right_evaluation(V: YDModule) -> YDMorphism:
    """ev~: V (x) V* -> 1 from the ribbon structure; here f(v) on v (x) f."""
    F = V.field
    Vd = dual(V)
    src = tensor(V, Vd)
    one = unit_object(V.group, F)
    M = la.zeros(F, 1, src.dim)
    for i in range(V.dim):
        M[0, i * V.dim + i] = 1 if F.kind == "prime" else F.one()
    return YDMorphism(src, one, M)


def right_coevaluation(V: YDModule) -> YDMorphism:
    """coev~: 1 -> V* (x) V, 1 -> sum v_i* (x) v_i."""
    F = V.field
    Vd = dual(V)
    tgt = tensor(Vd, V)
    one = unit_object(V.group, F)
    M = la.zeros(F, tgt.dim, 1)
    for i in range(V.dim):
        M[i * V.dim + i, 0] = 1 if F.kind == "prime" else F.one()
    return YDMorphism(one, tgt, M)


def quantum_dimension_object(V: YDModule):
    """dim_j(V) = ev~ o coev, a scalar (raw)."""
    F = V.field
    comp = la.mul(F, right_evaluation(V).matrix, coevaluation(V).matrix)
    return comp[0, 0]


def morphism_report(V: YDModule, W: YDModule, M, name="map") -> Report:
    """Grade preservation and equivariance of a candidate matrix."""
    F = V.field
    rep = Report(name)
    grade_viol = [
        (i, j)
        for i in range(W.dim)
        for j in range(V.dim)
        if W.grade_of[i] != V.grade_of[j] and not F.is_zero(M[i, j])
    ]
    rep.add(f"{name} grade-preserving", "morphism in the center", not grade_viol, grade_viol)
    equi_viol = []
    for s in V.group.generators:
        lhs = la.mul(F, M, V.action(s))
        rhs = la.mul(F, W.action(s), M)
        if not la.eq(F, lhs, rhs):
            equi_viol.append(V.group.labels[s])
    rep.add(f"{name} equivariant", "morphism in the center", not equi_viol, equi_viol)
    return rep


# ---------------------------------------------------------------------------
# hom spaces


def _masked_pairs(V: YDModule, W: YDModule):
    """Coordinates (i, j) where a morphism V -> W may be nonzero."""
    pairs = []
    for g in sorted(set(int(x) for x in V.grade_of)):
        rows = np.nonzero(W.grade_of == g)[0]
        cols = np.nonzero(V.grade_of == g)[0]
        pairs.extend((int(i), int(j)) for i in rows for j in cols)
    return pairs


def _pairs_to_matrix(F, V, W, pairs, coeffs):
    M = la.zeros(F, W.dim, V.dim)
    for (i, j), c in zip(pairs, coeffs):
        M[i, j] = c
    return M


def hom_space(V: YDModule, W: YDModule):
    """Basis of Hom(V, W) as a list of matrices."""
    if not V.same_context(W):
        raise GroupMismatch("hom requires the same group and field")
    F = V.field
    G = V.group
    pairs = _masked_pairs(V, W)
    K = len(pairs)
    if K == 0:
        return []
    semisimple = F.kind == "prime" and G.order % F.p != 0
    if semisimple and K > 600:
        return _hom_by_projector(V, W, pairs)
    pairs_by_i = {}
    pairs_by_j = {}
    for k, (i, j) in enumerate(pairs):
        pairs_by_i.setdefault(i, []).append((j, k))
        pairs_by_j.setdefault(j, []).append((i, k))
    rows = []
    zero = 0 if F.kind == "prime" else F.zero()
    for s in G.generators:
        AV = V.action(s)
        AW = W.action(s)
        # constraint (M . AV - AW . M)[r, c] = 0 on cells with
        # grade_W[r] = s grade_V[c] s^{-1}
        for r in range(W.dim):
            gr = int(W.grade_of[r])
            for c in range(V.dim):
                if int(G.conj(s, int(V.grade_of[c]))) != gr:
                    continue
                row = [zero] * K
                touched = False
                for j, k in pairs_by_i.get(r, ()):
                    coef = AV[j, c]
                    if not F.is_zero(coef):
                        row[k] = F.add(row[k], coef)
                        touched = True
                for i, k in pairs_by_j.get(c, ()):
                    coef = AW[r, i]
                    if not F.is_zero(coef):
                        row[k] = F.sub(row[k], coef)
                        touched = True
                if touched:
                    rows.append(row)
    if not rows:
        basis_coords = la.eye(F, K)
    else:
        C = (
            np.array(rows, dtype=np.int64) % F.p
            if F.kind == "prime"
            else la.from_rows(F, rows)
        )
        basis_coords = la.nullspace(F, C)
    out = []
    for t in range(basis_coords.shape[1]):
        out.append(_pairs_to_matrix(F, V, W, pairs, [basis_coords[k, t] for k in range(K)]))
    return out


def _hom_by_projector(V: YDModule, W: YDModule, pairs):
    """Averaging projector onto Hom(V, W); semisimple prime fields only."""
    F, G = V.field, V.group
    p = F.p
    K = len(pairs)
    pair_idx = {q: k for k, q in enumerate(pairs)}
    grades = sorted(set(int(x) for x in V.grade_of))
    block = {}
    for g in grades:
        rows = [k for k, (i, j) in enumerate(pairs) if V.grade_of[j] == g]
        block[g] = (
            np.array(rows, dtype=np.int64),
            np.nonzero(W.grade_of == g)[0],
            np.nonzero(V.grade_of == g)[0],
        )
    P = np.zeros((K, K), dtype=np.int64)
    for h in range(G.order):
        AW = W.action(h)
        AVinv = V.action_inv(h)
        for g in grades:
            cols_k, wrows_g, vcols_g = block[g]
            hgh = G.conj(h, g)
            if hgh not in block:
                continue
            rows_k, wrows_t, vcols_t = block[hgh]
            A = AW[np.ix_(wrows_t, wrows_g)]
            B = AVinv[np.ix_(vcols_g, vcols_t)]
            M = np.kron(A, B.T) % p
            P[np.ix_(rows_k, cols_k)] = (P[np.ix_(rows_k, cols_k)] + M) % p
    P = (P * pow(G.order % p, p - 2, p)) % p
    # image of the projector via deterministic sampling; P is idempotent here
    rng = np.random.default_rng(12345)
    cols = (P @ rng.integers(0, p, (K, 32))) % p
    while True:
        basis = _column_basis(F, cols)
        extra = (P @ rng.integers(0, p, (K, 16))) % p
        if la.rank(F, np.hstack([basis, extra]).T) == basis.shape[1]:
            break
        cols = np.hstack([cols, extra])
    if basis.shape[1]:
        assert la.eq(F, (P @ basis) % p, basis)
    out = [
        _pairs_to_matrix(F, V, W, pairs, [int(basis[k, t]) for k in range(K)])
        for t in range(basis.shape[1])
    ]
    # exact verification against the defining constraints
    for M in out:
        for s in G.generators:
            assert la.eq(F, la.mul(F, M, V.action(s)), la.mul(F, W.action(s), M))
    return out


def _column_basis(F, Y):
    R, piv = la.rref(F, Y.T)
    if not piv:
        return Y[:, :0]
    return np.array([R[t] for t in range(len(piv))], dtype=np.int64).T % F.p


def hom_dim(V: YDModule, W: YDModule) -> int:
    return len(hom_space(V, W))


def end_algebra(V: YDModule):
    """Basis of End(V) with composition structure constants."""
    basis = hom_space(V, V)
    F = V.field
    k = len(basis)
    flat = np.hstack([la.vec(b) for b in basis]) if k else la.zeros(F, V.dim * V.dim, 0)
    consts = {}
    for a in range(k):
        for b in range(k):
            prod = la.mul(F, basis[a], basis[b])
            coords = la.solve(F, flat, la.vec(prod))
            assert coords is not None
            consts[(a, b)] = [coords[t, 0] for t in range(k)]
    return basis, consts


# ---------------------------------------------------------------------------
# decomposition over semisimple splitting fields


def splitting_gate(field, G: FinGroup):
    if field.kind != "prime":
        raise NotSemisimpleField(
            "decomposition is implemented over prime splitting proxies only"
        )
    if G.order % field.p == 0:
        raise NotSemisimpleField(f"char {field.p} divides |G| = {G.order}")


def is_splitting_proxy(field, G: FinGroup) -> bool:
    return (
        field.kind == "prime"
        and G.order % field.p != 0
        and (field.p - 1) % G.exponent() == 0
    )


def submodule(V: YDModule, basis, name=None) -> YDModule:
    """Standalone module on an explicit invariant graded column basis."""
    F = V.field
    k = basis.shape[1]
    grades = []
    for t in range(k):
        support = [i for i in range(V.dim) if not F.is_zero(basis[i, t])]
        gs = {int(V.grade_of[i]) for i in support}
        assert len(gs) == 1, "submodule basis must be grade-homogeneous"
        grades.append(gs.pop())

    def maker(g, V=V, basis=basis):
        img = la.mul(F, V.action(g), basis)
        coords = la.solve(F, basis, img)
        assert coords is not None
        return coords

    return YDModule(V.group, F, grades, maker=maker, name=name or f"{V.name}|sub{k}")


def grade_split_columns(V: YDModule, cols):
    """Rewrite a spanning set as a grade-homogeneous basis of the same space."""
    F = V.field
    pieces = []
    for g in sorted(set(int(x) for x in V.grade_of)):
        rows = np.nonzero(V.grade_of == g)[0]
        proj = la.zeros(F, V.dim, cols.shape[1])
        for i in rows:
            proj[i, :] = cols[i, :]
        if not la.is_zero(F, proj):
            R, piv = la.rref(F, proj.T)
            for t in range(len(piv)):
                pieces.append(R[t])
    if not pieces:
        return la.zeros(F, V.dim, 0)
    if F.kind == "prime":
        return np.array(pieces, dtype=np.int64).T % F.p
    out = la.zeros(F, V.dim, len(pieces))
    for t, row in enumerate(pieces):
        for i in range(V.dim):
            out[i, t] = row[i]
    return out


def _poly_linear_factors(F, coeffs):
    """Roots with multiplicity; returns (roots dict, fully_split flag)."""
    roots = {}
    res = list(coeffs)
    for r in la.poly_roots_prime(F, coeffs):
        while True:
            q, rem = la.poly_divmod_prime(F, res, [(-r) % F.p, 1])
            if rem:
                break
            roots[r] = roots.get(r, 0) + 1
            res = q
    return roots, len(res) <= 1


def _restricted_end(V, basis, end_basis):
    """Endomorphisms of span(basis) induced by stable elements of end_basis."""
    F = V.field
    k = basis.shape[1]
    # C annihilates the column space of basis
    C = la.nullspace(F, basis.T).T
    conds = []
    for e in end_basis:
        eb = la.mul(F, e, basis)
        conds.append(la.vec(la.mul(F, C, eb)) if C.shape[0] else la.zeros(F, 1, 1))
    if C.shape[0]:
        M = np.hstack(conds)
        coeffs = la.nullspace(F, M)
    else:
        coeffs = la.eye(F, len(end_basis))
    out = []
    seen = la.zeros(F, k * k, 0)
    for t in range(coeffs.shape[1]):
        e = la.zeros(F, V.dim, V.dim)
        for a in range(len(end_basis)):
            if not F.is_zero(coeffs[a, t]):
                e = la.add(F, e, la.smul(F, coeffs[a, t], end_basis[a]))
        eb = la.mul(F, e, basis)
        er = la.solve(F, basis, eb)
        assert er is not None
        cand = np.hstack([seen, la.vec(er)])
        if la.rank(F, cand.T) > seen.shape[1]:
            seen = cand
            out.append(er)
    return out


def decompose(V: YDModule, seed: int = 0, max_draws: int = 48):
    """Simple constituents with multiplicities over a splitting prime field."""
    splitting_gate(V.field, V.group)
    F = V.field
    rng = np.random.default_rng(seed)
    simples = []

    def split(W: YDModule, ends):
        if W.dim == 0:
            return
        if len(ends) == 1:
            simples.append(W)
            return
        for _ in range(max_draws):
            coeffs = rng.integers(0, F.p, len(ends))
            e = la.zeros(F, W.dim, W.dim)
            for a, c in enumerate(coeffs):
                if c:
                    e = la.add(F, e, la.smul(F, int(c), ends[a]))
            mp = la.minimal_polynomial(F, e)
            roots, fully = _poly_linear_factors(F, mp)
            if not fully:
                continue  # non-split factor; resample
            if len(roots) < 2:
                continue  # scalar (or nilpotent residue); resample
            for r, mult in sorted(roots.items()):
                shifted = la.sub(F, e, la.smul(F, r, la.eye(F, W.dim)))
                ker = la.nullspace(F, la.mat_pow(F, shifted, mult))
                cols = grade_split_columns(W, ker)
                sub = submodule(W, cols, name=f"{W.name}.{r}")
                split(sub, _restricted_end(W, cols, ends))
            return
        raise NonSplit(
            f"endomorphism algebra of {W.name} failed to split after {max_draws} draws"
        )

    split(V, hom_space(V, V))
    # group simples into isomorphism classes via hom dimensions
    classes = []
    for S in simples:
        placed = False
        for entry in classes:
            if S.dim == entry[0].dim and hom_dim(S, entry[0]) > 0:
                entry[1] += 1
                placed = True
                break
        if not placed:
            classes.append([S, 1])
    classes.sort(key=lambda e: (e[0].dim, e[0].name))
    return [(S, m) for S, m in classes]


# ---------------------------------------------------------------------------
# simple objects of the center


def regular_double_module(G: FinGroup, field) -> YDModule:
    """The regular module of the double: basis (g, x), grade g, h.(g,x) = (hgh^{-1}, hx)."""
    n = G.order
    grades = [g for g in range(n) for _ in range(n)]

    def maker(h, G=G, field=field, n=n):
        M = la.zeros(field, n * n, n * n)
        one = 1 if field.kind == "prime" else field.one()
        for g in range(n):
            tg = G.conj(h, g)
            for x in range(n):
                M[tg * n + G.mul(h, x), g * n + x] = one
        return M

    return YDModule(G, field, grades, maker=maker, name="D(G)")


def _trivially_graded(Gsub: FinGroup, field, dim, action_maker, name):
    grades = [Gsub.identity] * dim
    return YDModule(Gsub, field, grades, maker=action_maker, name=name)


def group_irreps(C: FinGroup, field, seed: int = 0):
    """Absolutely irreducible representations of C over a splitting prime field.

    Obtained by decomposing the regular representation viewed as a trivially
    graded YD module over C.
    """
    def maker(c, C=C, field=field):
        M = la.zeros(field, C.order, C.order)
        one = 1 if field.kind == "prime" else field.one()
        for x in range(C.order):
            M[C.mul(c, x), x] = one
        return M

    reg = _trivially_graded(C, field, C.order, maker, f"k{C.name}")
    parts = decompose(reg, seed=seed)
    irreps = []
    for S, mult in parts:
        mats = {c: S.action(c) for c in range(C.order)}
        irreps.append((S.dim, mats))
        assert mult == S.dim  # regular module: multiplicity equals dimension
    return irreps


def simple_objects(G: FinGroup, field):
    """Simple YD modules over kG: one per (conjugacy class, centralizer irrep)."""
    cache_key = ("simples", field.key())
    if cache_key in G._cache:
        return G._cache[cache_key]
    splitting_gate(field, G)
    out = []
    for cls in G.conjugacy_classes():
        g0 = cls[0]
        C = G.subgroup(G.centralizer(g0))
        Cgrp = C.as_group()
        irreps = group_irreps(Cgrp, field, seed=g0 + 1)
        T = coset_data(G, C)
        reps = T.reps
        for dimr, mats in irreps:
            dim = len(reps) * dimr
            grades = []
            for x in reps:
                grades.extend([G.conj(x, g0)] * dimr)

            def maker(h, G=G, C=C, T=T, mats=mats, dimr=dimr, reps=reps, field=field):
                M = la.zeros(field, len(reps) * dimr, len(reps) * dimr)
                for i, x in enumerate(reps):
                    j, c = T.decompose(G.mul(h, x))
                    rho = mats[C.elements.index(c)]
                    for s in range(dimr):
                        for t in range(dimr):
                            v = rho[s, t]
                            if not field.is_zero(v):
                                M[j * dimr + s, i * dimr + t] = v
                return M

            out.append(
                YDModule(G, field, grades, maker=maker, name=f"M({G.labels[g0]},{dimr}d)")
            )
    # deterministic order: by (dim, class rep, name)
    out.sort(key=lambda S: (S.dim, S.name))
    G._cache[cache_key] = out
    return out
