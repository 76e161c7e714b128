"""Exact linear algebra over the rationals and over Laurent polynomials in q.

Small dense matrices only; rows are lists.  Rational elimination uses plain
Gaussian reduction with Fractions; Laurent-coefficient ranks use fraction-free
(Bareiss) elimination, staying inside the Laurent ring via exact division.
"""

from __future__ import annotations

from fractions import Fraction

from .polyring import QLaurent


def rref(rows, ncols):
    """Reduced row echelon form; returns (pivot column list, reduced rows)."""
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for rr in range(r, len(mat)):
            if mat[rr][c] != 0:
                pivot = rr
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        mat[r] = [x / pv for x in mat[r]]
        for rr in range(len(mat)):
            if rr != r and mat[rr][c] != 0:
                f = mat[rr][c]
                mat[rr] = [a - f * b for a, b in zip(mat[rr], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots, mat[:r]


def rank(rows, ncols):
    pivots, _ = rref(rows, ncols)
    return len(pivots)


def nullspace(rows, ncols):
    """Basis of the right kernel, as vectors of length ncols."""
    pivots, red = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][fc]
        basis.append(v)
    return basis


def solve(rows, ncols, rhs):
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    pivots, red = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = red[r][ncols]
    return x


def mat_mul(A, B):
    n, k = len(A), len(B)
    m = len(B[0]) if B else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                if Bt[j] != 0:
                    row[j] += a * Bt[j]
    return out


def mat_trace_product(A, B):
    """tr(A B) without forming the product."""
    total = Fraction(0)
    n = len(A)
    for i in range(n):
        for j in range(n):
            if A[i][j] != 0 and B[j][i] != 0:
                total += A[i][j] * B[j][i]
    return total


def identity_matrix(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# ranks and determinants over Z[q, q^-1]
# ---------------------------------------------------------------------------

def qlaurent_rank(rows, ncols):
    """Rank of a matrix with QLaurent entries, by fraction-free elimination."""
    mat = [list(r) for r in rows]
    nrows = len(mat)
    prev = QLaurent.one()
    r = 0
    for c in range(ncols):
        pivot = None
        for rr in range(r, nrows):
            if not mat[rr][c].is_zero():
                pivot = rr
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        for rr in range(r + 1, nrows):
            if all(mat[rr][cc].is_zero() for cc in range(c, ncols)):
                continue
            for cc in range(ncols):
                num = pv * mat[rr][cc] - mat[rr][c] * mat[r][cc]
                quo = num.div_exact(prev)
                if quo is None:
                    raise ArithmeticError("fraction-free elimination failed")
                mat[rr][cc] = quo
        prev = pv
        r += 1
        if r == nrows:
            break
    return r


def qlaurent_det(rows):
    """Determinant of a square QLaurent matrix by cofactor expansion."""
    n = len(rows)
    if n == 0:
        return QLaurent.one()
    if n == 1:
        return rows[0][0]
    total = QLaurent.zero()
    for j in range(n):
        a = rows[0][j]
        if a.is_zero():
            continue
        minor = [[rows[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = a * qlaurent_det(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total


def qlaurent_is_unit(x: QLaurent):
    """Units of the Laurent ring over the integers: single terms +-q^k."""
    if len(x.terms) != 1:
        return False
    c = next(iter(x.terms.values()))
    return c in (1, -1)


def qlaurent_inverse_matrix(rows):
    """Inverse of a QLaurent matrix with unit determinant (adjugate formula)."""
    n = len(rows)
    det = qlaurent_det(rows)
    if not qlaurent_is_unit(det):
        raise ArithmeticError("matrix determinant %r is not a unit" % det.to_text())
    e, = det.terms
    c = det.terms[e]
    det_inv = QLaurent({-e: c})  # c = +-1 so c is its own inverse
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[rows[r][cc] for cc in range(n) if cc != j]
                     for r in range(n) if r != i]
            cof = qlaurent_det(minor)
            if (i + j) % 2:
                cof = -cof
            out[j][i] = cof * det_inv
    return out
