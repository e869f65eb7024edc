"""Exact integer and rational linear algebra.

Matrices are tuples of row tuples of Python ints (``Matrix``); rationals are
:class:`fractions.Fraction`. Nothing here touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import NotSymmetric, SingularMatrix

Matrix = tuple[tuple[int, ...], ...]
Rat = Fraction


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    """Freeze a nested sequence of ints into a rectangular ``Matrix``."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    if m and any(len(row) != len(m[0]) for row in m):
        raise ValueError("matrix rows have unequal length")
    return m


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a, b):
    """Product of two matrices with entries of any exact numeric type."""
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def matvec(a, v):
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def is_symmetric(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and all(a[i][j] == a[j][i] for i in range(n) for j in range(i))


def det(a: Matrix) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    n, m = shape(a)
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    w = [list(row) for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if w[k][k] == 0:
            for i in range(k + 1, n):
                if w[i][k] != 0:
                    w[k], w[i] = w[i], w[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = w[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                w[i][j] = (w[i][j] * pivot - w[i][k] * w[k][j]) // prev
            w[i][k] = 0
        prev = pivot
    return sign * w[n - 1][n - 1]


def is_unimodular(a: Matrix) -> bool:
    n, m = shape(a)
    return n == m and abs(det(a)) == 1


def snf(a: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form.

    Returns ``(U, S, V)`` with ``U @ A @ V == S``, ``U`` and ``V`` unimodular,
    and ``S`` diagonal with nonnegative entries ``d1 | d2 | ...``. Zero
    diagonal entries (rank deficiency) come last.
    """
    m, n = shape(a)
    s = [list(row) for row in a]
    u = [list(row) for row in identity(m)]
    v = [list(row) for row in identity(n)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        if c:
            s[dst] = [x + c * y for x, y in zip(s[dst], s[src])]
            u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, c):
        if c:
            for row in s:
                row[dst] += c * row[src]
            for row in v:
                row[dst] += c * row[src]

    for t in range(min(m, n)):
        while True:
            # smallest nonzero entry of the trailing block becomes the pivot
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = s[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = s[t][t]
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    add_row(i, t, -(s[i][t] // p))
                    dirty = dirty or s[i][t] != 0
            for j in range(t + 1, n):
                if s[t][j]:
                    add_col(j, t, -(s[t][j] // p))
                    dirty = dirty or s[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if s[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
    return as_matrix(u), as_matrix(s), as_matrix(v)


def invariant_factors(a: Matrix) -> tuple[int, ...]:
    """Nonzero SNF diagonal entries greater than one."""
    _, s, _ = snf(a)
    return tuple(s[i][i] for i in range(min(shape(s))) if s[i][i] > 1)


def rat_solve(a: Matrix, b: Sequence) -> tuple[Fraction, ...]:
    """Solve ``A x = b`` exactly over the rationals for square nonsingular ``A``."""
    n, m = shape(a)
    if n != m or len(b) != n:
        raise ValueError("rat_solve needs a square matrix and a matching vector")
    w = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a, b)]
    for k in range(n):
        piv = next((i for i in range(k, n) if w[i][k] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is singular")
        w[k], w[piv] = w[piv], w[k]
        p = w[k][k]
        w[k] = [x / p for x in w[k]]
        for i in range(n):
            if i != k and w[i][k]:
                c = w[i][k]
                w[i] = [x - c * y for x, y in zip(w[i], w[k])]
    return tuple(row[n] for row in w)


def rat_inverse(a: Matrix) -> tuple[tuple[Fraction, ...], ...]:
    n, _ = shape(a)
    cols = [rat_solve(a, [int(i == j) for i in range(n)]) for j in range(n)]
    return tuple(zip(*cols))


def int_inverse(a: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = rat_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return as_matrix([[int(x) for x in row] for row in inv])


def congruence_diagonal(g: Matrix) -> list[Fraction]:
    """Diagonal of a rational congruence diagonalization ``P^T G P = D``.

    Zero pivots are completed by swapping in a later nonzero diagonal entry or,
    failing that, by adding a row/column with a nonzero off-diagonal entry.
    """
    if not is_symmetric(g):
        raise NotSymmetric("matrix is not symmetric")
    n = len(g)
    w = [[Fraction(x) for x in row] for row in g]
    diag = []
    for k in range(n):
        if w[k][k] == 0:
            j = next((j for j in range(k + 1, n) if w[j][j] != 0), None)
            if j is not None:
                w[k], w[j] = w[j], w[k]
                for row in w:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if w[k][j] != 0), None)
                if j is None:
                    raise SingularMatrix("matrix is singular")
                w[k] = [x + y for x, y in zip(w[k], w[j])]
                for row in w:
                    row[k] += row[j]
        p = w[k][k]
        for i in range(k + 1, n):
            c = w[i][k] / p
            if c:
                w[i] = [x - c * y for x, y in zip(w[i], w[k])]
                for row in w:
                    row[i] -= c * row[k]
        diag.append(p)
    return diag


def signature(g: Matrix) -> tuple[int, int]:
    """Counts of positive and negative eigenvalues of a nondegenerate symmetric matrix."""
    if not is_symmetric(g):
        raise NotSymmetric("matrix is not symmetric")
    if det(g) == 0:
        raise SingularMatrix("matrix is singular")
    diag = congruence_diagonal(g)
    return sum(1 for x in diag if x > 0), sum(1 for x in diag if x < 0)
