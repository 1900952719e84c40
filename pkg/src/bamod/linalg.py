"""Exact linear algebra over any field with structural equality.

Matrix entries only need ``+``, ``-``, ``*``, ``/`` and an ``is_zero``
property; both Gaussian rationals and the exponential-rational field
qualify.  Elimination always produces the (unique) reduced row echelon
form, so kernels and solutions are deterministic regardless of the pivot
choice; within a column the pivot with the smallest ``weight`` is taken
when entries advertise one, which keeps rational-function degree growth
down.
"""

from __future__ import annotations


class Inconsistent(Exception):
    """The linear system has no solution."""


class Underdetermined(Exception):
    """The linear system has more than one solution."""


def _weight(x) -> int:
    return getattr(x, "weight", 1)


def rref(matrix, ncols=None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` are the nonzero rows of the
    RREF and ``pivots`` their pivot column indices.
    """
    rows = [list(r) for r in matrix if any(not c.is_zero for c in r)]
    if not rows:
        return [], []
    if ncols is None:
        ncols = len(rows[0])
    pivots = []
    r = 0
    for col in range(ncols):
        best = None
        for k in range(r, len(rows)):
            e = rows[k][col]
            if e.is_zero:
                continue
            key = (_weight(e), k)
            if best is None or key < best[0]:
                best = (key, k)
        if best is None:
            continue
        k = best[1]
        rows[r], rows[k] = rows[k], rows[r]
        piv = rows[r][col]
        if piv != 1:
            inv_row = rows[r]
            rows[r] = [c / piv for c in inv_row]
        for k in range(len(rows)):
            if k == r:
                continue
            f = rows[k][col]
            if f.is_zero:
                continue
            rk, rr = rows[k], rows[r]
            rows[k] = [a - f * b for a, b in zip(rk, rr)]
        pivots.append(col)
        r += 1
        if r == len(rows):
            break
    rows = [row for row in rows if any(not c.is_zero for c in row)]
    return rows, pivots


def rank(matrix) -> int:
    return len(rref(matrix)[1])


def nullspace(matrix, ncols, one):
    """Basis of the right kernel, one vector per free column.

    The vector attached to free column ``c`` has ``one`` at position ``c``
    and the negated pivot-column entries of the RREF elsewhere; with the
    columns in a fixed order this is a canonical (reduced echelon) kernel
    basis.
    """
    zero = one - one
    rows, pivots = rref(matrix, ncols)
    pivot_set = set(pivots)
    basis = []
    for col in range(ncols):
        if col in pivot_set:
            continue
        vec = [zero] * ncols
        vec[col] = one
        for r, pc in enumerate(pivots):
            e = rows[r][col]
            if not e.is_zero:
                vec[pc] = -e
        basis.append(vec)
    return basis


def solve_unique(matrix, rhs, one):
    """Solve ``A x = b`` insisting on a unique solution.

    Raises :class:`Inconsistent` when no solution exists and
    :class:`Underdetermined` when the kernel is nontrivial.
    """
    zero = one - one
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        raise Inconsistent("inconsistent linear system")
    if len(pivots) < ncols:
        raise Underdetermined("linear system has a nontrivial kernel")
    sol = [zero] * ncols
    for r, pc in enumerate(pivots):
        sol[pc] = rows[r][ncols]
    return sol


def span_contains(vectors, target, one) -> bool:
    """Exact membership of ``target`` in the span of ``vectors``."""
    if all(c.is_zero for c in target):
        return True
    if not vectors:
        return False
    matrix = [list(col) for col in zip(*vectors)]
    rhs = list(target)
    ncols = len(vectors)
    aug = [r + [b] for r, b in zip(matrix, rhs)]
    _, pivots = rref(aug, ncols + 1)
    return ncols not in pivots


def ring_det(matrix, add, mul, neg, zero):
    """Determinant by cofactor expansion, valid over any commutative ring."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    if n == 1:
        return matrix[0][0]
    total = zero
    for col in range(n):
        entry = matrix[0][col]
        minor = [[row[c] for c in range(n) if c != col] for row in matrix[1:]]
        term = mul(entry, ring_det(minor, add, mul, neg, zero))
        if col % 2:
            term = neg(term)
        total = add(total, term)
    return total


def gq_det(matrix):
    """Determinant of a Gaussian-rational matrix by exact elimination."""
    from .gaussq import GaussQ, ONE

    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = ONE
    for col in range(n):
        piv = None
        for k in range(col, n):
            if not rows[k][col].is_zero:
                piv = k
                break
        if piv is None:
            return GaussQ(0)
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            det = -det
        p = rows[col][col]
        det = det * p
        for k in range(col + 1, n):
            f = rows[k][col]
            if f.is_zero:
                continue
            f = f / p
            rows[k] = [a - f * b for a, b in zip(rows[k], rows[col])]
    return det


def gq_inverse(matrix):
    """Inverse of a Gaussian-rational matrix; raises on singular input."""
    from .gaussq import ONE, ZERO

    n = len(matrix)
    aug = [list(r) + [ONE if k == j else ZERO for k in range(n)]
           for j, r in enumerate(matrix)]
    rows, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [rows[j][n:] for j in range(n)]
