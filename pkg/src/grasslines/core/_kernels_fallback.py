"""Pure numpy stand-in for the compiled modular elimination kernel."""

import numpy as np


def rref_mod_p(a, p):
    """Reduce the int64 array ``a`` in place to RREF modulo ``p``; return pivot columns."""
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv], c:] = a[[piv, r], c:]
        inv = pow(int(a[r, c]), -1, p)
        if inv != 1:
            a[r, c:] = (a[r, c:] * inv) % p
        f = a[:, c].copy()
        f[r] = 0
        rows = np.flatnonzero(f)
        if rows.size:
            a[rows, c:] = (a[rows, c:] - np.outer(f[rows], a[r, c:]) % p) % p
        pivots.append(c)
        r += 1
    return pivots
