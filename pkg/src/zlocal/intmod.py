"""Linear algebra over Z/n for exponent tables of roots of unity.

Cocycle identities are linear in exponent space, so enumeration and
coboundary reduction reduce to kernels, solves, and canonical coset
representatives over Z/n with n composite.  Smith normal form (over Z) gives
kernels and solves; Howell form gives canonical, lexicographically least
coset representatives.
"""

from __future__ import annotations

from math import gcd


def xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def modinv(a: int, n: int) -> int:
    g, s, _ = xgcd(a % n, n)
    assert g == 1, f"{a} not invertible mod {n}"
    return s % n


def smith_normal_form(A):
    """S = U A V with U, V unimodular; returns (diag, U, V) for integer A."""
    A = [list(map(int, row)) for row in A]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def row_op(i, j, c):  # row_i += c * row_j
        A[i] = [x + c * y for x, y in zip(A[i], A[j])]
        U[i] = [x + c * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, c):  # col_i += c * col_j
        for r in A:
            r[i] += c * r[j]
        for r in V:
            r[i] += c * r[j]

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if A[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        while True:
            # clear column t
            done = True
            for i in range(t + 1, rows):
                if A[i][t] % A[t][t] != 0:
                    g, s, u = xgcd(A[t][t], A[i][t])
                    a, b = A[t][t] // g, A[i][t] // g
                    rt = [s * x + u * y for x, y in zip(A[t], A[i])]
                    ri = [-b * x + a * y for x, y in zip(A[t], A[i])]
                    ut = [s * x + u * y for x, y in zip(U[t], U[i])]
                    ui = [-b * x + a * y for x, y in zip(U[t], U[i])]
                    A[t], A[i], U[t], U[i] = rt, ri, ut, ui
                    done = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    row_op(i, t, -(A[i][t] // A[t][t]))
            # clear row t
            for j in range(t + 1, cols):
                if A[t][j] % A[t][t] != 0:
                    g, s, u = xgcd(A[t][t], A[t][j])
                    a, b = A[t][t] // g, A[t][j] // g
                    for r in (A, V) if False else ():
                        pass
                    # column combination: col_t = s*col_t + u*col_j ; col_j = -b*col_t_old + a*col_j_old
                    for r in A:
                        ct, cj = r[t], r[j]
                        r[t], r[j] = s * ct + u * cj, -b * ct + a * cj
                    for r in V:
                        ct, cj = r[t], r[j]
                        r[t], r[j] = s * ct + u * cj, -b * ct + a * cj
                    done = False
            for j in range(t + 1, cols):
                if A[t][j]:
                    col_op(j, t, -(A[t][j] // A[t][t]))
            if done and all(A[i][t] == 0 for i in range(t + 1, rows)):
                break
        t += 1
    # enforce divisibility chain (not required by callers, skipped for speed)
    diag = [A[i][i] for i in range(min(rows, cols))]
    return diag, U, V


def kernel_mod(A, n: int):
    """Generators (as rows) of {x in (Z/n)^cols : A x = 0 mod n}."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [[0] * cols] if cols == 0 else [r for r in _unit_rows(cols)]
    diag, _, V = smith_normal_form(A)
    gens = []
    for i in range(cols):
        s = diag[i] if i < len(diag) else 0
        mult = n // gcd(s, n) if s != 0 else 1
        # x = V @ (mult * e_i)
        gen = [(V[r][i] * mult) % n for r in range(cols)]
        if any(gen):
            gens.append(gen)
    return gens


def _unit_rows(cols):
    return [[int(i == j) for j in range(cols)] for i in range(cols)]


def solve_mod(A, b, n: int):
    """One solution x of A x = b mod n, or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    diag, U, V = smith_normal_form(A)
    c = [sum(U[i][j] * b[j] for j in range(rows)) % n for i in range(rows)]
    y = [0] * cols
    for i in range(rows):
        s = diag[i] if i < min(len(diag), cols) else 0
        if i >= cols:
            if c[i] % n != 0:
                return None
            continue
        if s == 0:
            if c[i] % n != 0:
                return None
            continue
        g = gcd(s, n)
        if c[i] % g != 0:
            return None
        y[i] = ((c[i] // g) * modinv((s // g) % (n // g), n // g)) % (n // g)
    x = [sum(V[r][i] * y[i] for i in range(cols)) % n for r in range(cols)]
    return x


def _unit_lift(b: int, m: int, n: int) -> int:
    """A unit u mod n with u = modinv(b, m) mod m (m | n, gcd(b, m) = 1)."""
    u0 = modinv(b % m, m) if m > 1 else 1
    u = u0 % n
    step = m
    for _ in range(2 * n + 2):
        if gcd(u if u else n, n) == 1:
            return u
        u = (u + step) % n
    raise AssertionError("unit lift failed")


class HowellBasis:
    """Canonical basis of a subgroup of (Z/n)^cols, supporting reduction.

    Reduction against the basis yields the lexicographically least coset
    representative, which is what deterministic class representatives need.
    """

    def __init__(self, rows, n: int, cols: int):
        self.n = n
        self.cols = cols
        basis = {}  # pivot column -> row; row[pivot] divides n
        pending = [[x % n for x in r] for r in rows if any(x % n for x in r)]

        def normalize(v, c):
            a = v[c]
            g = gcd(a, n)
            u = _unit_lift(a // g, n // g, n)
            w = [(u * x) % n for x in v]
            assert w[c] == g
            return w

        while pending:
            v = pending.pop()
            for c in range(cols):
                if v[c] % n == 0:
                    continue
                if c in basis:
                    row = basis[c]
                    piv = row[c]
                    if v[c] % piv == 0:
                        q = v[c] // piv
                        v = [(x - q * y) % n for x, y in zip(v, row)]
                        continue
                    # shrink the pivot with a unimodular 2x2 combination
                    g, s, t = xgcd(piv, v[c])
                    comb = [(s * x + t * y) % n for x, y in zip(row, v)]
                    other = [((v[c] // g) * x - (piv // g) * y) % n for x, y in zip(row, v)]
                    comb = normalize(comb, c)
                    basis[c] = comb
                    ann = [((n // comb[c]) * x) % n for x in comb]
                    if any(ann):
                        pending.append(ann)
                    v = other
                    assert v[c] % n == 0
                else:
                    v = normalize(v, c)
                    basis[c] = v
                    ann = [((n // v[c]) * x) % n for x in v]
                    if any(ann):
                        pending.append(ann)
                    break
        # inter-reduce entries lying over other pivots
        pivots = sorted(basis)
        changed = True
        while changed:
            changed = False
            for ci in pivots:
                row = basis[ci]
                for cj in pivots:
                    if cj == ci:
                        continue
                    q = row[cj] // basis[cj][cj]
                    if q:
                        basis[ci] = [(x - q * y) % n for x, y in zip(row, basis[cj])]
                        row = basis[ci]
                        changed = True
        self.pivots = pivots
        self.rows = [basis[c] for c in pivots]

    def reduce(self, v):
        """Lexicographically least representative of v + span(self)."""
        v = [x % self.n for x in v]
        for pc, row in zip(self.pivots, self.rows):
            q = v[pc] // row[pc]
            if q:
                v = [(x - q * y) % self.n for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self.reduce(v))


def span_intersection(gens1, gens2, n: int, cols: int):
    """Generators of span(gens1) & span(gens2) inside (Z/n)^cols."""
    if not gens1 or not gens2:
        return []
    k1, k2 = len(gens1), len(gens2)
    # rows of the combined constraint: columns are coefficients (a | b),
    # condition sum a_i gens1_i - sum b_j gens2_j = 0
    A = [[gens1[i][c] for i in range(k1)] + [-gens2[j][c] % n for j in range(k2)] for c in range(cols)]
    ker = kernel_mod(A, n)
    out = []
    for vec in ker:
        a = vec[:k1]
        row = [sum(a[i] * gens1[i][c] for i in range(k1)) % n for c in range(cols)]
        if any(row):
            out.append(row)
    return out


def enumerate_quotient(group_gens, sub_gens, n: int, cols: int, limit: int = 100000):
    """Lex-least coset representatives of span(group_gens)/span(sub_gens)."""
    sub = HowellBasis(sub_gens, n, cols)
    zero = tuple([0] * cols)
    reps = {zero}
    frontier = [list(zero)]
    while frontier:
        nxt = []
        for rep in frontier:
            for g in group_gens:
                cand = tuple(sub.reduce([(x + y) % n for x, y in zip(rep, g)]))
                if cand not in reps:
                    if len(reps) >= limit:
                        raise AssertionError("quotient enumeration exceeded limit")
                    reps.add(cand)
                    nxt.append(list(cand))
        frontier = nxt
    return sorted(reps)
