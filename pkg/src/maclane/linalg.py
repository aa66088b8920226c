"""Exact integer matrix arithmetic: Smith normal form with transforms, and
the handful of lattice helpers built on it.

Everything here uses Python ints (no fixed-width arithmetic): intermediate
entries in a Smith reduction can exceed 64 bits even for small inputs.

Matrices are lists of row lists.  The public contract of
``smith_normal_form`` is U @ A @ V == S with U, V unimodular, S diagonal with
a divisibility chain, and a deterministic pivot rule (smallest absolute
value, ties broken by position) so repeated runs produce identical
transforms.
"""

from __future__ import annotations

from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k, a in enumerate(row):
            if a:
                Bk = B[k]
                for j in range(cols):
                    acc[j] += a * Bk[j]
        out.append(acc)
    return out


def matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def _pivot(A, s, rows, cols):
    """Smallest |entry| in the s.. block, ties by (row, col)."""
    best = None
    for i in range(s, rows):
        Ai = A[i]
        for j in range(s, cols):
            a = Ai[j]
            if a:
                key = (abs(a), i, j)
                if best is None or key < best:
                    best = key
    return None if best is None else (best[1], best[2])


def smith_normal_form(A):
    """Return (U, S, V) with U @ A @ V = S, S = diag(s1 | s2 | ...)."""
    U, S, V, _, _ = smith_with_inverses(A)
    return U, S, V


def smith_with_inverses(A):
    """Like smith_normal_form but also maintains U^-1 and V^-1.

    Returns (U, S, V, Uinv, Vinv); U @ A @ V = S, Uinv @ U = I, V @ Vinv = I.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    S = [list(r) for r in A]
    U = identity(rows)
    Ui = identity(rows)
    V = identity(cols)
    Vi = identity(cols)

    def row_swap(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]
        for r in Ui:
            r[i], r[j] = r[j], r[i]

    def col_swap(i, j):
        for r in S:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_add(dst, src, k):  # row dst += k * row src
        Sd, Ss = S[dst], S[src]
        for j in range(cols):
            Sd[j] += k * Ss[j]
        Ud, Us = U[dst], U[src]
        for j in range(rows):
            Ud[j] += k * Us[j]
        for r in Ui:
            r[src] -= k * r[dst]

    def col_add(dst, src, k):  # col dst += k * col src
        for r in S:
            r[dst] += k * r[src]
        for r in V:
            r[dst] += k * r[src]
        Vs, Vd = Vi[src], Vi[dst]
        for j in range(cols):
            Vs[j] -= k * Vd[j]

    def row_negate(i):
        S[i] = [-a for a in S[i]]
        U[i] = [-a for a in U[i]]
        for r in Ui:
            r[i] = -r[i]

    s = 0
    limit = min(rows, cols)
    while s < limit:
        p = _pivot(S, s, rows, cols)
        if p is None:
            break
        while True:
            i, j = p
            if i != s:
                row_swap(s, i)
            if j != s:
                col_swap(s, j)
            if S[s][s] < 0:
                row_negate(s)
            done = True
            piv = S[s][s]
            for i in range(s + 1, rows):
                if S[i][s]:
                    row_add(i, s, -(S[i][s] // piv))
                    if S[i][s]:
                        done = False
            for j in range(s + 1, cols):
                if S[s][j]:
                    col_add(j, s, -(S[s][j] // piv))
                    if S[s][j]:
                        done = False
            if done:
                # pivot must divide the rest of the block
                piv = S[s][s]
                offender = None
                for i in range(s + 1, rows):
                    Si = S[i]
                    for j in range(s + 1, cols):
                        if Si[j] % piv:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                row_add(s, offender, 1)
            p = _pivot(S, s, rows, cols)
        s += 1

    return U, S, V, Ui, Vi


def diagonal(S):
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


def kernel_lattice(A):
    """Columns (as lists) spanning {x : A @ x = 0} over the integers."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if cols == 0:
        return []
    _, S, V = smith_normal_form(A)
    d = diagonal(S)
    out = []
    for j in range(cols):
        if j >= len(d) or d[j] == 0:
            out.append([V[i][j] for i in range(cols)])
    return out


def solve_integer(A, b):
    """One integer solution x of A @ x = b, or None."""
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U, S, V, _, _ = smith_with_inverses(A)
    c = matvec(U, b)
    d = diagonal(S)
    z = [0] * cols
    for i in range(rows):
        di = d[i] if i < len(d) else 0
        if di:
            if c[i] % di:
                return None
            if i < cols:
                z[i] = c[i] // di
        elif c[i]:
            return None
    return matvec(V, z)


def is_unimodular(A):
    n = len(A)
    if any(len(r) != n for r in A):
        return False
    return abs(_det(A)) == 1


def _det(A):
    # fraction-free Gaussian elimination (Bareiss)
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def gcdext(a, b):
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def unit_to_gcd(v, e):
    """A unit u mod e with u*v = gcd(v, e) mod e."""
    g = gcd(v, e)
    vp, ep = v // g, e // g
    # vp is invertible mod ep; lift to a unit mod e
    _, inv, _ = gcdext(vp % ep if ep > 1 else 0, ep)
    u = inv % ep if ep > 1 else 1
    # u*vp = 1 mod ep; adjust u by multiples of ep to make it a unit mod e
    while gcd(u, e) != 1:
        u += ep
    return u % e if e > 1 else 0
