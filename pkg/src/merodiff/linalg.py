"""Exact and numeric linear algebra, plus integer lattice reduction.

Matrices are plain lists of rows.  Exact routines accept ints, Fractions and
Gaussian rationals; integer routines work on Python ints only.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Sequence

from .exact import GaussianRational, scalar
from .numeric import DEFAULT_PREC, get_ctx, to_mpc

RANK_RTOL = 1e-10


def rref(matrix: Sequence[Sequence[Any]]) -> tuple[list[list[GaussianRational]], list[int]]:
    """Reduced row-echelon form over Q(i) and the pivot columns."""
    rows = [[scalar(x) for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = GaussianRational(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_exact(matrix: Sequence[Sequence[Any]]) -> int:
    return len(rref(matrix)[1])


def nullspace_exact(matrix: Sequence[Sequence[Any]], ncols: int | None = None) -> list[list[GaussianRational]]:
    """Basis of ``{x : M x = 0}`` over Q(i)."""
    if not matrix:
        n = ncols or 0
        return [[GaussianRational(int(i == j)) for j in range(n)] for i in range(n)]
    rows, pivots = rref(matrix)
    n = len(rows[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [GaussianRational(0)] * n
        v[f] = GaussianRational(1)
        for r, p in enumerate(pivots):
            v[p] = -rows[r][f]
        basis.append(v)
    return basis


def rank_numeric(matrix: Sequence[Sequence[Any]], prec: int = DEFAULT_PREC,
                 rtol: float = RANK_RTOL, scale: Any = None) -> int:
    """Number of singular values above ``rtol`` times the largest one, or
    times ``scale`` when that is bigger (so a matrix of roundoff has rank 0)."""
    if not matrix or not matrix[0]:
        return 0
    ctx = get_ctx(prec)
    A = ctx.matrix([[to_mpc(x, ctx) for x in row] for row in matrix])
    sv = ctx.svd_c(A, compute_uv=False)
    vals = [abs(sv[i]) for i in range(sv.rows)]
    top = max(vals)
    if scale is not None:
        top = max(top, ctx.mpf(abs(to_mpc(scale, ctx))))
    if top == 0:
        return 0
    return sum(1 for s in vals if s > rtol * top)


def singular_values(matrix: Sequence[Sequence[Any]], prec: int = DEFAULT_PREC) -> list:
    ctx = get_ctx(prec)
    A = ctx.matrix([[to_mpc(x, ctx) for x in row] for row in matrix])
    sv = ctx.svd_c(A, compute_uv=False)
    return sorted((abs(sv[i]) for i in range(sv.rows)), reverse=True)


def _round_div(a: int, b: int) -> int:
    """Nearest integer to a/b for b > 0."""
    return (2 * a + b) // (2 * b)


def lll_reduce(basis: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)) -> list[list[int]]:
    """LLL-reduce linearly independent integer vectors in exact integer
    arithmetic (the integral variant: Gram-Schmidt data is kept as integer
    sub-determinants, so no rationals appear)."""
    b = [list(map(int, v)) for v in basis]
    n = len(b)
    if n <= 1:
        return b
    dnum, dden = delta.numerator, delta.denominator

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    d = [0] * (n + 1)
    lam = [[0] * n for _ in range(n)]
    d[0] = 1
    d[1] = dot(b[0], b[0])
    if d[1] == 0:
        raise ValueError("LLL input vectors are linearly dependent")

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = _round_div(lam[k][l], d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k, kmax):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        la = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + la * la) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - la * t) // d[k]
            lam[i][k - 1] = (B * t + la * lam[i][k]) // d[k + 1]
        d[k] = B

    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    d[k + 1] = u
                    if u == 0:
                        raise ValueError("LLL input vectors are linearly dependent")
        red(k, k - 1)
        if dden * d[k + 1] * d[k - 1] < dnum * d[k] * d[k] - dden * lam[k][k - 1] ** 2:
            swap(k, kmax)
            k = max(1, k - 1)
            continue
        for l in range(k - 2, -1, -1):
            red(k, l)
        k += 1
    return b


def hnf_with_transform(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]]]:
    """Row-style Hermite normal form ``H = U * rows`` with ``U`` unimodular.

    Zero rows of ``H`` are kept at the bottom so the matching rows of ``U``
    span the integer left kernel.
    """
    H = [list(map(int, r)) for r in rows]
    m = len(H)
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    if not H:
        return H, U
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
                    if H[i][c]:
                        done = False
            if done:
                break
        if r < m and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
                U[r] = [-x for x in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [x - q * y for x, y in zip(H[i], H[r])]
                    U[i] = [x - q * y for x, y in zip(U[i], U[r])]
            r += 1
    return H, U


def hnf(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    """Hermite normal form with zero rows removed; a canonical lattice basis."""
    H, _ = hnf_with_transform(rows)
    return [h for h in H if any(h)]


def integer_kernel(matrix: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """LLL-reduced basis of ``{x in Z^ncols : M x = 0}``."""
    if not matrix:
        return [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    cols = [[int(matrix[i][j]) for i in range(len(matrix))] for j in range(ncols)]
    H, U = hnf_with_transform(cols)
    kernel = [U[i] for i in range(ncols) if not any(H[i])]
    return lll_reduce(kernel) if kernel else []


def saturate(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of ``span_Q(rows) ∩ Z^ncols``."""
    if not rows:
        return []
    perp = integer_kernel(rows, ncols)
    return integer_kernel(perp, ncols) if perp else [[int(i == j) for j in range(ncols)] for i in range(ncols)]


def rational_to_integer_rows(vectors: Sequence[Sequence[Any]]) -> list[list[int]]:
    """Scale rational vectors to primitive integer vectors."""
    from math import gcd, lcm
    out = []
    for v in vectors:
        fr = []
        for x in v:
            x = scalar(x)
            if x.im:
                raise ValueError("vector is not rational")
            fr.append(x.re)
        L = 1
        for x in fr:
            L = lcm(L, x.denominator)
        ints = [int(x * L) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        out.append([x // g for x in ints] if g else ints)
    return out
