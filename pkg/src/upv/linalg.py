"""Exact dense linear algebra over the coefficient fields.

``rank`` is exact Gaussian elimination.  Prime-field matrices take a
vectorized numpy path (int64 residues, exact); every other field uses the
pure-Python elimination, which also serves as the independent oracle in the
property tests.  ``det_poly`` computes determinants of polynomial matrices by
sparse cofactor expansion, which is exact and fast on the near-diagonal
matrices arising from the Jacobian and chart checks.
"""

from __future__ import annotations

from typing import List, Sequence

import numpy as np

from .poly import Poly, PolyError
from .scalars import PrimeField


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Exact rank of an integer matrix over GF(p), vectorized elimination."""
    m = np.array(matrix, dtype=np.int64) % p
    if m.size == 0:
        return 0
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        sub = m[r:, c]
        nz = np.nonzero(sub)[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        below = m[r + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            m[r + 1 + hit] = (m[r + 1 + hit] - np.outer(below[hit], m[r])) % p
        r += 1
        if r == rows:
            break
    return r


def rank(matrix: Sequence[Sequence[object]], domain) -> int:
    """Exact rank of a matrix of field elements."""
    rows = [list(row) for row in matrix]
    if not rows or not rows[0]:
        return 0
    if isinstance(domain, PrimeField):
        m = np.array([[int(domain.coerce(x)) for x in row] for row in rows],
                     dtype=np.int64)
        return rank_mod_p(m, domain.p)
    return rank_naive(rows, domain)


def rank_naive(matrix: Sequence[Sequence[object]], domain) -> int:
    """Row reduction with explicit field arithmetic; the oracle path."""
    m = [[domain.coerce(x) for x in row] for row in matrix]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = domain.one() / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == nrows:
            break
    return r


def det_field(matrix: Sequence[Sequence[object]], domain):
    """Exact determinant of a square matrix of field elements."""
    m = [[domain.coerce(x) for x in row] for row in matrix]
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    det = domain.one()
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return domain.zero()
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = domain.one() / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def det_poly(matrix: List[List[Poly]]) -> Poly:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion along the sparsest row of the live submatrix; the
    matrices this package meets are sparse enough that the recursion stays
    near-linear in the permanent support.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise PolyError("determinant of a non-square matrix")
    if n == 0:
        raise PolyError("determinant of an empty matrix")
    ambient, domain = matrix[0][0].ambient, matrix[0][0].domain
    zero = Poly.zero(ambient, domain)

    def expand(rows: tuple, cols: tuple) -> Poly:
        if len(rows) == 1:
            return matrix[rows[0]][cols[0]]
        best, best_count = None, None
        for ri, r in enumerate(rows):
            count = sum(1 for c in cols if matrix[r][c])
            if best_count is None or count < best_count:
                best, best_count = ri, count
                if count <= 1:
                    break
        if best_count == 0:
            return zero
        r = rows[best]
        rest_rows = rows[:best] + rows[best + 1:]
        acc = zero
        for ci, c in enumerate(cols):
            entry = matrix[r][c]
            if not entry:
                continue
            minor = expand(rest_rows, cols[:ci] + cols[ci + 1:])
            if minor.is_zero():
                continue
            term = entry * minor
            if (best + ci) % 2:
                term = -term
            acc = acc + term
        return acc

    idx = tuple(range(n))
    return expand(idx, idx)


def kernel_dimension(matrix, domain, ncols: int) -> int:
    rows = [r for r in matrix if any(domain.coerce(x) for x in r)]
    return ncols - rank(rows, domain) if rows else ncols
