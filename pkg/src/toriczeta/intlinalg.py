"""Exact integer/rational linear algebra on small dense matrices (lists of lists)."""

from fractions import Fraction
from functools import reduce
from math import gcd


def det(M):
    """Integer determinant by Bareiss fraction-free elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(map(int, row)) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rref(M):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return [], []
    ncols = len(A[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(M):
    return len(rref(M)[1])


def primitive(v):
    """Scale a rational vector to a primitive integer vector (same direction)."""
    v = [Fraction(x) for x in v]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in v), 1)
    w = [int(x * den) for x in v]
    g = reduce(gcd, (abs(x) for x in w), 0)
    if g == 0:
        return w
    return [x // g for x in w]


def nullspace(M, ncols=None):
    """Primitive integer vectors spanning the rational kernel of ``M``."""
    if ncols is None:
        ncols = len(M[0])
    R, pivots = rref(M) if M else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def unimodular_echelon(vectors, n):
    """Row-reduce the column matrix of ``vectors`` with unimodular row operations.

    Returns ``(U, d)`` where ``U`` is an n x n unimodular integer matrix and
    ``d`` the rank, such that ``U @ w`` has zeros past index ``d`` for every
    ``w`` in the rational span of ``vectors``. ``U`` maps the saturated lattice
    ``Z^n ∩ span`` onto ``Z^d x 0``.
    """
    cols = [list(map(int, v)) for v in vectors]
    W = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    m = len(cols)
    r = 0
    for c in range(m):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if W[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(W[i][c]))
            W[r], W[piv] = W[piv], W[r]
            U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, n):
                if W[i][c] != 0:
                    qt = W[i][c] // W[r][c]
                    W[i] = [a - qt * b for a, b in zip(W[i], W[r])]
                    U[i] = [a - qt * b for a, b in zip(U[i], U[r])]
                    if W[i][c] != 0:
                        done = False
            if done:
                break
        if any(W[i][c] != 0 for i in range(r, n)):
            r += 1
    return U, r


def matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def inverse_unimodular(U):
    """Integer inverse of a unimodular matrix."""
    n = len(U)
    aug = [list(U[i]) + [int(i == j) for j in range(n)] for i in range(n)]
    R, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    inv = [[R[i][n + j] for j in range(n)] for i in range(n)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]
