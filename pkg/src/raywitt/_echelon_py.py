"""Row echelon kernels, pure-Python implementation.

The compiled module raywitt._echelon exposes the same two functions;
raywitt.linalg imports whichever is available.  Both kernels return
(rank, pivot_columns, echelon_rows) with all rows below the rank zero.
"""


def echelon_int(rows):
    """Fraction-free (Bareiss) row echelon form of an integer matrix.

    Every intermediate entry is a minor of the input, so the interior
    divisions are exact and no rational arithmetic is needed.
    """
    m = [list(row) for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[pr], m[r] = m[r], m[pr]
        row_r = m[r]
        piv = row_r[c]
        for i in range(r + 1, nrows):
            row_i = m[i]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, m


def echelon_mod(rows, p):
    """Row echelon form over Z/p with pivots normalized to 1."""
    m = [[v % p for v in row] for row in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[pr], m[r] = m[r], m[pr]
        row_r = m[r]
        inv = pow(row_r[c], -1, p)
        for j in range(c, ncols):
            row_r[j] = (row_r[j] * inv) % p
        for i in range(r + 1, nrows):
            row_i = m[i]
            f = row_i[c]
            if f:
                for j in range(c, ncols):
                    row_i[j] = (row_i[j] - f * row_r[j]) % p
        pivots.append(c)
        r += 1
    return r, pivots, m
