"""Small exact integer linear algebra: Smith reduction and ranks.

Everything here works on dense lists of Python ints; sizes are tiny
(rows/columns bounded by crossing counts or homology block dimensions).
"""

from __future__ import annotations

from math import gcd


def smith_diagonal_with_cols(rows: list[list[int]], n_cols: int):
    """Diagonalize an integer matrix by unimodular row/column operations.

    Returns (diag, col_ops) where diag lists the nonzero diagonal entries
    and col_ops is the accumulated column transform V (as a list of column
    vectors, length n_cols): if M' = diagonal form, then solutions of
    M x = 0 correspond to x = V y with the diagonal system on y.
    The diagonal is not forced into a divisibility chain; any diagonal
    form supports solution counting mod N.
    """
    a = [row[:] for row in rows]
    n_rows = len(a)
    v = [[1 if i == j else 0 for j in range(n_cols)] for i in range(n_cols)]
    # v[i][j]: entry; columns of V are v-columns; apply same col ops as on a

    def col_swap(j1, j2):
        for row in a:
            row[j1], row[j2] = row[j2], row[j1]
        for row in v:
            row[j1], row[j2] = row[j2], row[j1]

    def col_addmul(dst, src, k):
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def row_swap(i1, i2):
        a[i1], a[i2] = a[i2], a[i1]

    def row_addmul(dst, src, k):
        arow, srow = a[dst], a[src]
        for j in range(n_cols):
            arow[j] += k * srow[j]

    diag = []
    r = 0
    c = 0
    while r < n_rows and c < n_cols:
        # locate smallest nonzero pivot in the remaining block
        best = None
        for i in range(r, n_rows):
            for j in range(c, n_cols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(r, best[0])
        col_swap(c, best[1])
        while True:
            p = a[r][c]
            dirty = False
            for i in range(r + 1, n_rows):
                if a[i][c]:
                    q = a[i][c] // p
                    row_addmul(i, r, -q)
                    if a[i][c]:
                        row_swap(r, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(c + 1, n_cols):
                if a[r][j]:
                    q = a[r][j] // p
                    col_addmul(j, c, -q)
                    if a[r][j]:
                        col_swap(c, j)
                        dirty = True
                        break
            if not dirty:
                break
        diag.append(abs(a[r][c]))
        r += 1
        c += 1
    cols = [[v[i][j] for i in range(n_cols)] for j in range(n_cols)]
    return diag, cols


def solution_count_mod(rows: list[list[int]], n_cols: int, modulus: int) -> int:
    """Number of x in (Z/N)^n_cols with M x = 0 (mod N)."""
    diag, _ = smith_diagonal_with_cols(rows, n_cols)
    count = modulus ** (n_cols - len(diag))
    for d in diag:
        count *= gcd(d, modulus)
    return count


def solution_basis_mod(rows: list[list[int]], n_cols: int, modulus: int):
    """Generators of the solution space of M x = 0 mod N.

    Returns a list of (vector, order) pairs; every solution is a Z/N
    combination of the vectors, the i-th having additive order `order`.
    """
    diag, cols = smith_diagonal_with_cols(rows, n_cols)
    gens = []
    for i, d in enumerate(diag):
        g = gcd(d, modulus)
        if g == 1:
            continue
        scale = modulus // g
        vec = [(scale * x) % modulus for x in cols[i]]
        gens.append((vec, g))
    for i in range(len(diag), n_cols):
        gens.append(([x % modulus for x in cols[i]], modulus))
    return gens


def int_rank(rows: list[list[int]]) -> int:
    """Exact rank over Q by fraction-free elimination."""
    if not rows or not rows[0]:
        return 0
    a = [row[:] for row in rows]
    n_rows, n_cols = len(a), len(a[0])
    rank = 0
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if a[i][col]), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, n_rows):
            if a[i][col]:
                q = a[i][col]
                a[i] = [p * x - q * y for x, y in zip(a[i], a[rank])]
                g = 0
                for x in a[i]:
                    g = gcd(g, x)
                if g > 1:
                    a[i] = [x // g for x in a[i]]
        rank += 1
        if rank == n_rows:
            break
    return rank
