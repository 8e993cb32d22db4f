"""Exact integer linear algebra on small dense matrices.

Matrices are tuples of row tuples of Python ints, so entries never overflow.
Everything here is sized for 2g x 2g matrices with g <= 10 or so; nothing is
vectorised.
"""

from __future__ import annotations

from math import gcd
from typing import Sequence

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


class IntegralityError(ArithmeticError):
    """An exact integer computation hit a non-integral or singular case."""


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(n: int, m: int | None = None) -> Matrix:
    m = n if m is None else m
    return tuple((0,) * m for _ in range(n))


def j_std(g: int) -> Matrix:
    """Block-diagonal standard form with blocks [[0, 1], [-1, 0]]."""
    n = 2 * g
    rows = [[0] * n for _ in range(n)]
    for k in range(g):
        rows[2 * k][2 * k + 1] = 1
        rows[2 * k + 1][2 * k] = -1
    return as_matrix(rows)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a: Matrix, v: Sequence[int]) -> Vector:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def scale(a: Matrix, k: int) -> Matrix:
    return tuple(tuple(k * x for x in row) for row in a)


def matadd(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def columns(a: Matrix) -> list[Vector]:
    return [tuple(c) for c in transpose(a)]


def from_columns(cols: Sequence[Sequence[int]]) -> Matrix:
    return transpose(tuple(tuple(c) for c in cols))


def form(u: Sequence[int], v: Sequence[int]) -> int:
    """Standard symplectic pairing u^T J_std v."""
    total = 0
    for k in range(0, len(u), 2):
        total += u[k] * v[k + 1] - u[k + 1] * v[k]
    return total


def gram(vectors: Sequence[Sequence[int]], pairing=form) -> Matrix:
    return tuple(tuple(pairing(u, v) for v in vectors) for u in vectors)


def det(a: Matrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def is_symplectic(m: Matrix) -> bool:
    g = len(m) // 2
    j = j_std(g)
    return matmul(matmul(transpose(m), j), m) == j


def symplectic_inverse(m: Matrix) -> Matrix:
    """Inverse of a matrix preserving J_std: J^-1 M^T J with J^-1 = -J."""
    g = len(m) // 2
    j = j_std(g)
    return scale(matmul(matmul(j, transpose(m)), j), -1)


def matpow(m: Matrix, k: int) -> Matrix:
    if k < 0:
        m = symplectic_inverse(m)
        k = -k
    result = identity(len(m))
    base = m
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def is_primitive(v: Sequence[int]) -> bool:
    d = 0
    for x in v:
        d = gcd(d, x)
    return d == 1


def symplectic_reduce(omega: Matrix) -> Matrix:
    """Return unimodular P with P^T omega P = J_std.

    omega must be skew-symmetric and unimodular. The starting basis is the
    standard one, so a Gram matrix that is already J_std up to the sign of
    the second vector in each pair comes back as a diagonal +-1 matrix.
    """
    n = len(omega)
    if n % 2:
        raise IntegralityError("odd-dimensional skew form")
    basis = [list(row) for row in identity(n)]

    def pair(u, v):
        return sum(u[i] * omega[i][j] * v[j] for i in range(n) for j in range(n) if u[i] and v[j])

    for i in range(0, n, 2):
        # Euclid on the pairings of basis[i] with the later vectors.
        while True:
            vals = [(abs(pair(basis[i], basis[j])), j) for j in range(i + 1, n)]
            nonzero = [(a, j) for a, j in vals if a]
            if not nonzero:
                raise IntegralityError("form is degenerate")
            if len(nonzero) == 1:
                break
            _, jmin = min(nonzero)
            pmin = pair(basis[i], basis[jmin])
            for a, j in nonzero:
                if j == jmin:
                    continue
                q = pair(basis[i], basis[j]) // pmin
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[jmin])]
        j = nonzero[0][1]
        basis[i + 1], basis[j] = basis[j], basis[i + 1]
        p = pair(basis[i], basis[i + 1])
        if p == -1:
            basis[i + 1] = [-x for x in basis[i + 1]]
        elif p != 1:
            raise IntegralityError(f"form is not unimodular (pivot {p})")
        e, f = basis[i], basis[i + 1]
        for k in range(i + 2, n):
            w = basis[k]
            a = pair(w, f)
            b = pair(w, e)
            basis[k] = [x - a * y + b * z for x, y, z in zip(w, e, f)]
    return from_columns(basis)


def solve_unimodular_rows(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> Vector:
    """Integer solution x of R x = rhs, for R with primitive row lattice.

    Column operations bring R to lower-triangular form with a unimodular
    k x k block; anything else raises IntegralityError.
    """
    k = len(rows)
    n = len(rows[0])
    r = [list(row) for row in rows]
    u = [list(row) for row in identity(n)]

    def colop(dst, src, q):
        for row in r:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def colswap(a, b):
        for row in r:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    for i in range(k):
        while True:
            nz = [j for j in range(i, n) if r[i][j]]
            if not nz:
                raise IntegralityError("rows are linearly dependent")
            jmin = min(nz, key=lambda j: abs(r[i][j]))
            if jmin != i:
                colswap(i, jmin)
            rest = [j for j in range(i + 1, n) if r[i][j]]
            if not rest:
                break
            for j in rest:
                colop(j, i, r[i][j] // r[i][i])
        if abs(r[i][i]) != 1:
            raise IntegralityError("row lattice is not primitive")
    y = [0] * n
    for i in range(k):
        acc = rhs[i] - sum(r[i][j] * y[j] for j in range(i))
        y[i] = acc * r[i][i]  # r[i][i] is +-1
    return tuple(sum(u[a][b] * y[b] for b in range(n)) for a in range(n))


def charpoly(m: Matrix) -> list[int]:
    """Characteristic polynomial det(xI - M), coefficients from x^n down.

    Faddeev-LeVerrier; every division is exact for integer M.
    """
    n = len(m)
    coeffs = [1]
    mk = zeros(n)
    ident = identity(n)
    c = 1
    for k in range(1, n + 1):
        mk = matmul(m, matadd(mk, scale(ident, c)))
        tr = sum(mk[i][i] for i in range(n))
        if tr % k:
            raise IntegralityError("non-integral trace step")
        c = -tr // k
        coeffs.append(c)
    return coeffs
