"""Small exact linear algebra over the rationals.

Matrices here are tiny (at most 5x5), so plain Gaussian elimination over
``Fraction`` is the simplest thing that is exact.
"""

from fractions import Fraction
from math import gcd


def det(rows):
    """Exact determinant of a square matrix given as a list of rows."""
    m = [[Fraction(x) for x in row] for row in rows]
    size = len(m)
    if size == 0:
        return Fraction(1)
    result = Fraction(1)
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            result = -result
        p = m[col][col]
        result *= p
        for r in range(col + 1, size):
            f = m[r][col] / p
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col + 1, size):
                    row_r[c] -= f * row_c[c]
    return result


def rank(rows):
    """Exact rank of a (possibly empty or non-square) matrix."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def solve(rows, rhs):
    """Solve the square system ``rows @ x = rhs`` exactly; None if singular."""
    size = len(rows)
    m = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if m[r][col] != 0), None)
        if pivot is None:
            return None
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [a / p for a in m[col]]
        for r in range(size):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][size] for r in range(size)]


def normal_vector(rows):
    """Integer primitive generator of the kernel of an (n-1) x n integer matrix.

    Uses signed maximal minors, so the result is exact. Returns None when the
    rows do not have full rank.
    """
    n = len(rows) + 1
    comps = []
    for k in range(n):
        minor = [[row[c] for c in range(n) if c != k] for row in rows]
        d = det(minor)
        comps.append(int(d) if k % 2 == 0 else -int(d))
    g = 0
    for c in comps:
        g = gcd(g, c)
    if g == 0:
        return None
    return tuple(c // g for c in comps)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))
