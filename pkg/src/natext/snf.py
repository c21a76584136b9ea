"""Exact integer Smith normal form and lattice membership.

All arithmetic is over Python ints, so there is no overflow or rounding.
Matrices are lists of row lists.  For a relation matrix R the quotient
Z^n / rowspan(R) is read off the diagonal: rank = n - r free summands and
one Z/d torsion summand per invariant factor d >= 2.
"""

from __future__ import annotations


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(
    mat: list[list[int]],
) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (D, U, V) with U * mat * V = D diagonal, U and V unimodular.

    Diagonal entries are non-negative and satisfy the divisibility chain
    d_1 | d_2 | ... .  Uses minimal-nonzero-pivot elimination; every step
    is an integer row or column operation, so the transforms stay exact.
    """
    a = [row[:] for row in mat]
    m = len(a)
    n = len(a[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row_dst += c * row_src
        a[dst] = [x + c * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in a:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # pick the entry of smallest nonzero absolute value in the submatrix
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = a[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        if a[t][t] < 0:
            negate_row(t)
        # clear row and column t; pivot may shrink, so iterate
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t] != 0:
                    q = a[i][t] // p
                    add_row(t, i, -q)
                    if a[i][t] != 0:
                        swap_rows(t, i)
                        if a[t][t] < 0:
                            negate_row(t)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(t + 1, n):
                if a[t][j] != 0:
                    q = a[t][j] // p
                    add_col(t, j, -q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
                        break
            if not dirty:
                break
        # enforce divisibility: pivot must divide every remaining entry
        p = a[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % p != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue  # redo this pivot position
        t += 1
    return a, u, v


def diagonal(d: list[list[int]]) -> list[int]:
    m = len(d)
    n = len(d[0]) if m else 0
    return [d[i][i] for i in range(min(m, n))]


def invariant_factors(mat: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form, in divisibility order."""
    if not mat:
        return []
    d, _, _ = smith_normal_form(mat)
    return [x for x in diagonal(d) if x != 0]


def quotient_structure(mat: list[list[int]], n_cols: int) -> tuple[int, list[int], list[list[int]]]:
    """Structure of Z^n_cols / rowspan(mat): (free rank, torsion list, V).

    V is the column transform of the Smith form; the class of z in the
    quotient has coordinates z * V read against the diagonal (mod d_i on
    torsion positions, free beyond the rank).  Torsion lists only the
    invariant factors >= 2.
    """
    if not mat:
        return n_cols, [], _identity(n_cols)
    d, _, v = smith_normal_form(mat)
    factors = [x for x in diagonal(d) if x != 0]
    rank = n_cols - len(factors)
    torsion = [x for x in factors if x >= 2]
    return rank, torsion, v


def lattice_contains(mat: list[list[int]], vec: list[int]) -> bool:
    """Is vec in the integer row span of mat?

    With U*mat*V = D, vec lies in rowspan(mat) iff e = vec*V has
    e_i divisible by d_i on the diagonal and e_i = 0 past the rank.
    """
    n = len(vec)
    if not mat:
        return all(x == 0 for x in vec)
    d, _, v = smith_normal_form(mat)
    e = [sum(vec[i] * v[i][j] for i in range(n)) for j in range(n)]
    diag = diagonal(d)
    for j in range(n):
        dj = diag[j] if j < len(diag) else 0
        if dj == 0:
            if e[j] != 0:
                return False
        elif e[j] % dj != 0:
            return False
    return True
