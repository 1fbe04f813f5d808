"""Exact dense linear algebra over the rationals."""

from fractions import Fraction


def rref(rows, ncols):
    """Reduced row echelon form with leftmost-pivot selection.

    Returns (nonzero reduced rows, pivot column indices).
    """
    mat = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        pv = mat[r][c]
        if pv != 1:
            mat[r] = [x / pv for x in mat[r]]
        row = mat[r]
        for i in range(len(mat)):
            f = mat[i][c]
            if i != r and f != 0:
                mat[i] = [a - f * b for a, b in zip(mat[i], row)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def nullspace(rows, ncols):
    """Echelon basis of the right nullspace.

    One vector per free column in ascending column order; each vector has a
    1 in its own free column and 0 in every other free column, which makes
    the basis canonical.
    """
    red, pivots = rref(rows, ncols)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -red[i][fc]
        basis.append(v)
    return basis
