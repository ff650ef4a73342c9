"""Dense exact linear algebra over the package's coefficient fields.

Prime-field matrices are int64 numpy arrays with entries in [0, p), kept
reduced; cyclotomic matrices are object arrays holding raw Fraction tuples.
Everything is exact; there are no thresholds anywhere.
"""

from __future__ import annotations

import numpy as np

from .errors import ShapeMismatch


def zeros(F, r, c):
    if F.kind == "prime":
        return np.zeros((r, c), dtype=np.int64)
    A = np.empty((r, c), dtype=object)
    z = F.zero()
    for i in range(r):
        for j in range(c):
            A[i, j] = z
    return A


def eye(F, n):
    A = zeros(F, n, n)
    one = F.one() if F.kind != "prime" else 1
    for i in range(n):
        A[i, i] = one
    return A


def from_rows(F, rows):
    """Build a matrix from nested lists of raw scalars."""
    r = len(rows)
    c = len(rows[0]) if r else 0
    A = zeros(F, r, c)
    for i in range(r):
        for j in range(c):
            A[i, j] = rows[i][j] if F.kind != "prime" else rows[i][j] % F.p
    return A


def copy(F, A):
    return A.copy()


def add(F, A, B):
    if F.kind == "prime":
        return (A + B) % F.p
    r, c = A.shape
    out = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            out[i, j] = F.add(A[i, j], B[i, j])
    return out


def sub(F, A, B):
    if F.kind == "prime":
        return (A - B) % F.p
    r, c = A.shape
    out = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            out[i, j] = F.sub(A[i, j], B[i, j])
    return out


def neg(F, A):
    if F.kind == "prime":
        return (-A) % F.p
    r, c = A.shape
    out = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            out[i, j] = F.neg(A[i, j])
    return out


def smul(F, s, A):
    """Scalar (raw) times matrix."""
    if F.kind == "prime":
        return (A * (s % F.p)) % F.p
    r, c = A.shape
    out = np.empty((r, c), dtype=object)
    for i in range(r):
        for j in range(c):
            out[i, j] = F.mul(s, A[i, j])
    return out


def mul(F, A, B):
    if A.shape[1] != B.shape[0]:
        raise ShapeMismatch(f"{A.shape} @ {B.shape}")
    if F.kind == "prime":
        # route big products through BLAS; exact while entries < 2^53
        if A.shape[1] * (F.p - 1) ** 2 < 2**53 and A.size * B.shape[1] > 2**18:
            return (
                np.asarray(A, dtype=np.float64) @ np.asarray(B, dtype=np.float64)
            ).astype(np.int64) % F.p
        return (A @ B) % F.p
    r, m = A.shape
    c = B.shape[1]
    out = zeros(F, r, c)
    for i in range(r):
        for k in range(m):
            a = A[i, k]
            if F.is_zero(a):
                continue
            for j in range(c):
                b = B[k, j]
                if not F.is_zero(b):
                    out[i, j] = F.add(out[i, j], F.mul(a, b))
    return out


def mulchain(F, *mats):
    out = mats[0]
    for M in mats[1:]:
        out = mul(F, out, M)
    return out


def kron(F, A, B):
    if F.kind == "prime":
        return np.kron(A, B) % F.p
    ra, ca = A.shape
    rb, cb = B.shape
    out = zeros(F, ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            a = A[i, j]
            if F.is_zero(a):
                continue
            for k in range(rb):
                for l in range(cb):
                    b = B[k, l]
                    if not F.is_zero(b):
                        out[i * rb + k, j * cb + l] = F.mul(a, b)
    return out


def is_zero(F, A) -> bool:
    if F.kind == "prime":
        return not np.any(A % F.p)
    return all(F.is_zero(x) for x in A.flat)


def eq(F, A, B) -> bool:
    if A.shape != B.shape:
        return False
    return is_zero(F, sub(F, A, B))


def rref(F, A):
    """Reduced row echelon form; returns (R, pivot column list)."""
    R = A.copy()
    rows, cols = R.shape
    if F.kind == "prime":
        p = F.p
        R = R % p
        piv = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.nonzero(R[r:, c])[0]
            if nz.size == 0:
                continue
            k = r + int(nz[0])
            if k != r:
                R[[r, k]] = R[[k, r]]
            R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
            mask = np.nonzero(R[:, c])[0]
            mask = mask[mask != r]
            if mask.size:
                R[mask] = (R[mask] - np.outer(R[mask, c], R[r])) % p
            piv.append(c)
            r += 1
        return R, piv
    piv = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        k = next((i for i in range(r, rows) if not F.is_zero(R[i, c])), None)
        if k is None:
            continue
        if k != r:
            for j in range(cols):
                R[r, j], R[k, j] = R[k, j], R[r, j]
        s = F.inv(R[r, c])
        for j in range(cols):
            R[r, j] = F.mul(s, R[r, j])
        for i in range(rows):
            if i != r and not F.is_zero(R[i, c]):
                f = R[i, c]
                for j in range(cols):
                    R[i, j] = F.sub(R[i, j], F.mul(f, R[r, j]))
        piv.append(c)
        r += 1
    return R, piv


def rank(F, A) -> int:
    return len(rref(F, A)[1])


def nullspace(F, A):
    """Matrix whose columns are a basis of {x : A x = 0}."""
    rows, cols = A.shape
    R, piv = rref(F, A)
    free = [c for c in range(cols) if c not in piv]
    N = zeros(F, cols, len(free))
    one = 1 if F.kind == "prime" else F.one()
    for j, fc in enumerate(free):
        N[fc, j] = one
        for i, pc in enumerate(piv):
            N[pc, j] = F.neg(R[i, fc]) if F.kind != "prime" else (-R[i, fc]) % F.p
    return N


def solve(F, A, B):
    """Particular solution X of A X = B (free variables zero), or None."""
    rows, cols = A.shape
    if B.ndim == 1:
        B = B.reshape(-1, 1)
    aug = np.hstack([A, B])
    R, piv = rref(F, aug)
    for c in piv:
        if c >= cols:
            return None  # inconsistent
    X = zeros(F, cols, B.shape[1])
    for i, pc in enumerate(piv):
        for j in range(B.shape[1]):
            X[pc, j] = R[i, cols + j]
    return X


def inv(F, A):
    n = A.shape[0]
    if A.shape[1] != n:
        raise ShapeMismatch("inverse of non-square matrix")
    X = solve(F, A, eye(F, n))
    if X is None or not eq(F, mul(F, A, X), eye(F, n)):
        return None
    return X


def det(F, A):
    n = A.shape[0]
    R = A.copy()
    if F.kind == "prime":
        p = F.p
        R = R % p
        out = 1
        for c in range(n):
            nz = np.nonzero(R[c:, c])[0]
            if nz.size == 0:
                return 0
            k = c + int(nz[0])
            if k != c:
                R[[c, k]] = R[[k, c]]
                out = (-out) % p
            out = (out * int(R[c, c])) % p
            inv_p = pow(int(R[c, c]), p - 2, p)
            below = np.nonzero(R[c + 1 :, c])[0] + c + 1
            if below.size:
                R[below] = (R[below] - np.outer((R[below, c] * inv_p) % p, R[c])) % p
        return out
    out = F.one()
    for c in range(n):
        k = next((i for i in range(c, n) if not F.is_zero(R[i, c])), None)
        if k is None:
            return F.zero()
        if k != c:
            for j in range(n):
                R[c, j], R[k, j] = R[k, j], R[c, j]
            out = F.neg(out)
        out = F.mul(out, R[c, c])
        s = F.inv(R[c, c])
        for i in range(c + 1, n):
            if not F.is_zero(R[i, c]):
                f = F.mul(R[i, c], s)
                for j in range(n):
                    R[i, j] = F.sub(R[i, j], F.mul(f, R[c, j]))
    return out


def mat_pow(F, A, e):
    n = A.shape[0]
    out = eye(F, n)
    base = A
    while e:
        if e & 1:
            out = mul(F, out, base)
        base = mul(F, base, base)
        e >>= 1
    return out


def vec(A):
    """Column-major flattening as a column vector."""
    return A.T.reshape(-1, 1)


def column(F, entries):
    col = zeros(F, len(entries), 1)
    for i, x in enumerate(entries):
        col[i, 0] = x if F.kind != "prime" else x % F.p
    return col


def minimal_polynomial(F, A):
    """Monic minimal polynomial of A, as raw coefficients low-degree first."""
    n = A.shape[0]
    # Krylov on the flattened powers of A
    powers = [eye(F, n)]
    while True:
        prev = np.hstack([vec(P) for P in powers[:-1]]) if len(powers) > 1 else None
        X = solve(F, prev, vec(powers[-1])) if prev is not None else None
        if X is not None and eq(F, mul(F, prev, X), vec(powers[-1])):
            coeffs = [
                F.neg(X[i, 0]) if F.kind != "prime" else (-int(X[i, 0])) % F.p
                for i in range(len(powers) - 1)
            ]
            one = 1 if F.kind == "prime" else F.one()
            return coeffs + [one]
        if len(powers) > n + 1:
            raise AssertionError("minimal polynomial search exceeded dimension")
        powers.append(mul(F, powers[-1], A))


def poly_eval_matrix(F, coeffs, A):
    n = A.shape[0]
    out = zeros(F, n, n)
    for c in reversed(coeffs):
        out = mul(F, out, A)
        ce = smul(F, c if F.kind != "prime" else int(c), eye(F, n))
        out = add(F, out, ce)
    return out


def poly_roots_prime(F, coeffs):
    """All roots in F_p of a polynomial with prime-field coefficients."""
    assert F.kind == "prime"
    roots = []
    for x in range(F.p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * x + c) % F.p
        if acc == 0:
            roots.append(x)
    return roots


def contract_pair(F, spec, A3, B3, rows, cols):
    """Exact einsum contraction of two 3-index structure tensors (prime only).

    Avoids materializing the huge Kronecker factors of two-sided composites
    like (m (x) Id)(Id (x) D)."""
    assert F.kind == "prime"
    return np.einsum(spec, A3, B3).reshape(rows, cols) % F.p


def poly_divmod_prime(F, num, den):
    """Polynomial division over F_p, coefficient lists low-degree first."""
    assert F.kind == "prime"
    p = F.p
    num = [c % p for c in num]
    den = [c % p for c in den]
    while den and den[-1] == 0:
        den.pop()
    q = [0] * max(len(num) - len(den) + 1, 0)
    inv_lead = pow(den[-1], p - 2, p)
    for i in range(len(num) - len(den), -1, -1):
        coef = (num[i + len(den) - 1] * inv_lead) % p
        q[i] = coef
        for j, c in enumerate(den):
            num[i + j] = (num[i + j] - coef * c) % p
    while num and num[-1] == 0:
        num.pop()
    return q, num
