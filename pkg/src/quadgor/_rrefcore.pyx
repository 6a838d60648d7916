# cython: boundscheck=False, wraparound=False, cdivision=True
"""Row reduction over a prime field, the hot kernel behind every rank,
nullspace, and Betti-number computation.

Matrices are C-contiguous int64 arrays with entries already reduced into
[0, p).  p must be an odd prime below 2**31 so that products fit in int64.
"""

cimport cython


cdef long _inv_mod(long a, long p):
    # extended Euclid; a nonzero mod p
    cdef long g = a, x = 1, h = p, y = 0, q, t
    while h != 0:
        q = g / h
        t = g - q * h; g = h; h = t
        t = x - q * y; x = y; y = t
    x %= p
    if x < 0:
        x += p
    return x


@cython.boundscheck(False)
@cython.wraparound(False)
def echelon(long[:, ::1] a, long p, bint reduce_above=True):
    """In-place row reduction of ``a`` mod p.  Returns the pivot column list.

    With ``reduce_above`` the result is the reduced row echelon form;
    without it only entries below each pivot are cleared (enough for rank).
    """
    cdef Py_ssize_t m = a.shape[0], n = a.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, piv
    cdef long f, inv, v
    pivots = []
    for col in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(col, n):
                v = a[r, j]; a[r, j] = a[piv, j]; a[piv, j] = v
        inv = _inv_mod(a[r, col], p)
        if inv != 1:
            for j in range(col, n):
                a[r, j] = (a[r, j] * inv) % p
        if reduce_above:
            for i in range(m):
                if i == r:
                    continue
                f = a[i, col]
                if f == 0:
                    continue
                for j in range(col, n):
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        else:
            for i in range(r + 1, m):
                f = a[i, col]
                if f == 0:
                    continue
                for j in range(col, n):
                    v = (a[i, j] - f * a[r, j]) % p
                    if v < 0:
                        v += p
                    a[i, j] = v
        pivots.append(col)
        r += 1
    return pivots
