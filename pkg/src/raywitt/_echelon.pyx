# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Row echelon kernels, compiled implementation.

Mirror of raywitt._echelon_py.  Integer entries stay Python objects
(they can exceed machine precision); the win is compiled index loops.
The mod-p kernel runs entirely on C integers.
"""

from cpython cimport array
import array


def echelon_int(rows):
    """Fraction-free (Bareiss) row echelon form of an integer matrix."""
    cdef list m = [list(row) for row in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef Py_ssize_t ncols = len(m[0]) if nrows else 0
    cdef list pivots = []
    cdef object prev = 1
    cdef object piv, f
    cdef list row_r, row_i
    cdef Py_ssize_t r = 0, c, i, j, pr
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if (<list>m[i])[c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            m[pr], m[r] = m[r], m[pr]
        row_r = <list>m[r]
        piv = row_r[c]
        for i in range(r + 1, nrows):
            row_i = <list>m[i]
            f = row_i[c]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots, m


def echelon_mod(rows, long long p):
    """Row echelon form over Z/p with pivots normalized to 1."""
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t ncols = len(rows[0]) if nrows else 0
    cdef array.array buf = array.array('q', [0]) * 0
    cdef Py_ssize_t i, j, c, pr
    cdef long long v
    buf = array.array('q', [0] * (nrows * ncols))
    for i in range(nrows):
        row = rows[i]
        for j in range(ncols):
            v = row[j] % p
            buf[i * ncols + j] = v
    cdef long long[::1] a = buf
    cdef list pivots = []
    cdef Py_ssize_t r = 0
    cdef long long inv, f
    for c in range(ncols):
        if r == nrows:
            break
        pr = -1
        for i in range(r, nrows):
            if a[i * ncols + c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        if pr != r:
            for j in range(ncols):
                v = a[pr * ncols + j]
                a[pr * ncols + j] = a[r * ncols + j]
                a[r * ncols + j] = v
        inv = _inverse_mod(a[r * ncols + c], p)
        for j in range(c, ncols):
            a[r * ncols + j] = (a[r * ncols + j] * inv) % p
        for i in range(r + 1, nrows):
            f = a[i * ncols + c]
            if f:
                for j in range(c, ncols):
                    a[i * ncols + j] = (a[i * ncols + j] - f * a[r * ncols + j]) % p
                    if a[i * ncols + j] < 0:
                        a[i * ncols + j] += p
        pivots.append(c)
        r += 1
    m = [[a[i * ncols + j] for j in range(ncols)] for i in range(nrows)]
    return r, pivots, m


cdef long long _inverse_mod(long long x, long long p):
    cdef long long old_r = x % p, rr = p
    cdef long long old_s = 1, s = 0
    cdef long long q, t
    while rr != 0:
        q = old_r // rr
        t = old_r - q * rr
        old_r = rr
        rr = t
        t = old_s - q * s
        old_s = s
        s = t
    old_s %= p
    if old_s < 0:
        old_s += p
    return old_s
