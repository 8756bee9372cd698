"""Exact dense linear algebra over the Gaussian rationals.

Matrices are lists of row lists of GaussianRational.  Elimination pivots on
the first nonzero entry in column order; there is no numerical tolerance
anywhere in the package.
"""

from __future__ import annotations

from .scalars import ONE, ZERO


def zeros(rows, cols):
    return [[ZERO for _ in range(cols)] for _ in range(rows)]


def rref(matrix):
    """Reduced row echelon form.  Returns (rows, pivot column list)."""
    rows = [list(r) for r in matrix]
    if not rows:
        return rows, []
    n_cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = rows[i][c]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, n_cols=None):
    """A basis of the kernel of the matrix acting on column vectors."""
    if not matrix:
        n = n_cols or 0
        return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    reduced, pivots = rref(matrix)
    n = len(matrix[0])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        vec = [ZERO] * n
        vec[f] = ONE
        for r, p in enumerate(pivots):
            vec[p] = -reduced[r][f]
        basis.append(vec)
    return basis


def solve(matrix, rhs):
    """One solution of matrix @ x = rhs, or None when inconsistent."""
    if not matrix:
        return [] if not any(rhs) else None
    n = len(matrix[0])
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    reduced, pivots = rref(augmented)
    if n in pivots:
        return None
    x = [ZERO] * n
    for r, p in enumerate(pivots):
        x[p] = reduced[r][n]
    return x


def determinant(matrix):
    """Determinant by fraction-free-ish elimination over Q(i)."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    det = ONE
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if rows[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            return ZERO
        if pivot_row != c:
            rows[c], rows[pivot_row] = rows[pivot_row], rows[c]
            det = -det
        pivot = rows[c][c]
        det = det * pivot
        inv = ONE / pivot
        for i in range(c + 1, n):
            if rows[i][c]:
                factor = rows[i][c] * inv
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[c])]
    return det


def determinant_ring(matrix, one):
    """Cofactor-expansion determinant for matrices over any commutative ring
    (used for symbolic entries, where division is unavailable)."""
    n = len(matrix)
    if n == 0:
        return one

    def minor_det(row_indices, col_indices):
        if len(row_indices) == 1:
            return matrix[row_indices[0]][col_indices[0]]
        i = row_indices[0]
        rest_rows = row_indices[1:]
        total = None
        for k, j in enumerate(col_indices):
            entry = matrix[i][j]
            if not entry:
                continue
            rest_cols = col_indices[:k] + col_indices[k + 1:]
            piece = entry * minor_det(rest_rows, rest_cols)
            if k % 2:
                piece = -piece
            total = piece if total is None else total + piece
        if total is None:
            return matrix[i][col_indices[0]] * 0
        return total

    return minor_det(tuple(range(n)), tuple(range(n)))


def quotient_representatives(cocycles, boundaries):
    """Representatives of span(cocycles) modulo span(boundaries).

    Reduces each cocycle against an echelon of the boundaries; nonzero
    remainders become echelon-form representatives.  Vector lists are over
    GaussianRational.
    """
    echelon = []  # list of (pivot index, normalized row)

    def reduce(vec):
        v = list(vec)
        for pivot, row in echelon:
            if v[pivot]:
                factor = v[pivot]
                v = [a - factor * b for a, b in zip(v, row)]
        return v

    def insert(vec):
        v = reduce(vec)
        for i, x in enumerate(v):
            if x:
                inv = ONE / x
                row = [y * inv for y in v]
                echelon.append((i, row))
                echelon.sort(key=lambda item: item[0])
                return row
        return None

    for b in boundaries:
        insert(b)
    reps = []
    for z in cocycles:
        row = insert(z)
        if row is not None:
            reps.append(row)
    return reps
