"""Exact integer linear algebra on lattice vectors and matrices.

Vectors are tuples of Python ints, matrices are tuples of row vectors.
Everything is arbitrary precision and there is no floating point anywhere;
downstream ring reductions rely on these routines being exact and on the
Hermite normal form convention fixed here (row style, pivots positive,
entries above each pivot reduced into ``[0, pivot)``, zero rows last).
"""

from __future__ import annotations

from math import gcd

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class NotUnimodularError(ValueError):
    """Raised when a matrix expected to have determinant +-1 does not.

    In fan terms this signals non-smooth cone data.
    """


def vector(entries) -> IntVector:
    return tuple(int(e) for e in entries)


def matrix(rows) -> IntMatrix:
    m = tuple(vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise ValueError("matrix rows must have equal length")
    return m


def identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m: IntMatrix) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a and b and len(a[0]) != len(b):
        raise ValueError("inner dimensions do not match")
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a: IntMatrix, v: IntVector) -> IntVector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def is_primitive(v: IntVector) -> bool:
    """True iff the gcd of the entries is 1.  The zero vector is not primitive."""
    g = 0
    for e in v:
        g = gcd(g, e)
    return g == 1


def determinant(m: IntMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) >= 0 and x*a + y*b = g."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ m == h``.  The form
    is the repo-wide convention: row echelon with positive pivots, entries
    above each pivot reduced into ``[0, pivot)``, zero rows at the bottom.
    """
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    h = [list(row) for row in m]
    u = [list(row) for row in identity(nrows)]
    r = 0
    for col in range(ncols):
        # Clear the column below row r down to a single gcd entry at (r, col).
        pivot = None
        for i in range(r, nrows):
            if h[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            h[r], h[pivot] = h[pivot], h[r]
            u[r], u[pivot] = u[pivot], u[r]
        for i in range(r + 1, nrows):
            while h[i][col] != 0:
                a, b = h[r][col], h[i][col]
                if b % a == 0:
                    q = b // a
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                else:
                    g, x, y = _xgcd(a, b)
                    p, q = a // g, b // g
                    h[r], h[i] = (
                        [x * s + y * t for s, t in zip(h[r], h[i])],
                        [-q * s + p * t for s, t in zip(h[r], h[i])],
                    )
                    u[r], u[i] = (
                        [x * s + y * t for s, t in zip(u[r], u[i])],
                        [-q * s + p * t for s, t in zip(u[r], u[i])],
                    )
        if h[r][col] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        p = h[r][col]
        for i in range(r):
            q = h[i][col] // p
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return matrix(h), matrix(u)


def invert_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1.

    Raises ``NotUnimodularError`` otherwise; the inverse is again integer.
    """
    d = determinant(m)
    if d not in (1, -1):
        raise NotUnimodularError(f"matrix has determinant {d}, expected +-1")
    h, u = hermite_normal_form(m)
    if h != identity(len(m)):
        raise AssertionError("HNF of a unimodular matrix must be the identity")
    return u
