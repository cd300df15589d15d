"""Slow, independent reference implementations used to cross-check the engine.

Nothing here touches python-flint or the package's own matrix code: plain
Fraction Gauss-Jordan elimination and dict-based polynomial arithmetic.
"""

from fractions import Fraction
from itertools import product
from math import comb


def rref(rows):
    """Gauss-Jordan over Q; returns (reduced rows, pivot columns)."""
    A = [[Fraction(v) for v in r] for r in rows]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        lead = A[r][c]
        A[r] = [v / lead for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                factor = A[i][c]
                A[i] = [a - factor * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows):
    return len(rref(rows)[1])


def kernel(rows, ncols):
    """Basis of the right kernel, one vector per free column."""
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Polynomials as {(i, j, k): Fraction}


def monomials(k):
    return [(i, j, k - i - j) for i in range(k, -1, -1) for j in range(k - i, -1, -1)]


def pmul(a, b):
    out = {}
    for (e1, c1), (e2, c2) in product(a.items(), b.items()):
        e = tuple(x + y for x, y in zip(e1, e2))
        out[e] = out.get(e, 0) + c1 * c2
    return {e: c for e, c in out.items() if c}


def pdiff(a, v):
    out = {}
    for e, c in a.items():
        if e[v]:
            ne = list(e)
            ne[v] -= 1
            out[tuple(ne)] = c * e[v]
    return out


def jacobian_dim(f, d, k):
    """dim (J_f)_k by spanning all m * partial products."""
    if k < d - 1:
        return 0
    parts = [pdiff(f, v) for v in range(3)]
    target = {m: i for i, m in enumerate(monomials(k))}
    rows = []
    for p in parts:
        for m in monomials(k - d + 1):
            prod_ = pmul(p, {m: Fraction(1)})
            row = [Fraction(0)] * len(target)
            for e, c in prod_.items():
                row[target[e]] = c
            rows.append(row)
    return rank(rows)


def d0_dim(f, d, k):
    """dim D0(f)_k by a brute-force kernel of S_k^3 -> S_{k+d-1}."""
    parts = [pdiff(f, v) for v in range(3)]
    src = monomials(k)
    target = {m: i for i, m in enumerate(monomials(k + d - 1))}
    cols = []
    for p in parts:
        for m in src:
            col = [Fraction(0)] * len(target)
            for e, c in pmul(p, {m: Fraction(1)}).items():
                col[target[e]] = c
            cols.append(col)
    matrix = [list(r) for r in zip(*cols)]
    return len(cols) - rank(matrix)


def dim_s(k):
    return comb(k + 2, 2) if k >= 0 else 0


# ---------------------------------------------------------------------------
# Local algebra


def local_colength(gens, N):
    """dim Q[u,v]/(gens + m^N) for gens given as {(i, j): coeff}."""
    mons = [(i, s - i) for s in range(N) for i in range(s, -1, -1)]
    idx = {m: n for n, m in enumerate(mons)}
    rows = []
    for g in gens:
        for m in mons:
            row = [Fraction(0)] * len(mons)
            hit = False
            for (a, b), c in g.items():
                e = (a + m[0], b + m[1])
                if e in idx:
                    row[idx[e]] += c
                    hit = True
            if hit:
                rows.append(row)
    return len(mons) - rank(rows)
