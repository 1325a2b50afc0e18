# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular elimination kernels.

Entries must already be reduced into [0, p) with p < 2**31, so every product
fits in a signed 64-bit integer.
"""

from libc.stdint cimport int64_t


cdef int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(int64_t[:, ::1] a, int64_t p):
    """Reduce ``a`` in place to reduced row-echelon form modulo ``p``.

    Returns the list of pivot columns.
    """
    cdef Py_ssize_t nrows = a.shape[0], ncols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, ncols):
                tmp = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = tmp
        inv = _inv_mod(a[r, c], p)
        if inv != 1:
            for j in range(c, ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            f = a[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, ncols):
                if a[r, j] != 0:
                    a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return pivots
