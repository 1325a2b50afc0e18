"""Certified multimodular kernels of rational matrices.

The matrix is cleared of denominators row by row and reduced modulo primes
close to 2**31 with the compiled (or numpy) kernel. The rank modulo p never
exceeds the rank over Q, so a kernel basis of size ``ncols - rank_p`` that
checks out exactly over Q is the whole kernel. The basis is rebuilt from the
modular RREF by Chinese remaindering and rational reconstruction; because each
candidate vector carries a unit in its free column and is supported on earlier
columns otherwise, passing the exact check also proves the pivot set agrees
with the one over Q, so the result equals the canonical basis from ``matrix``.
"""

from fractions import Fraction
from itertools import islice
from math import gcd, isqrt, lcm

import numpy as np
from sympy import prevprime

from .kernels import rref_mod_p
from .matrix import nullspace as exact_nullspace
from .matrix import rank as exact_rank

__all__ = ["nullspace", "nullity", "rank", "PRIMES"]

# largest primes below 2**31
PRIMES = (
    2147483647,
    2147483629,
    2147483587,
    2147483579,
    2147483563,
    2147483549,
    2147483543,
    2147483497,
    2147483489,
    2147483477,
    2147483423,
    2147483399,
    2147483353,
    2147483323,
    2147483269,
    2147483249,
)


def _integer_rows(rows):
    out = []
    for r in rows:
        den = lcm(*(x.denominator for x in r))
        if den == 1:
            out.append([x.numerator for x in r])
        else:
            out.append([x.numerator * (den // x.denominator) for x in r])
    return out


def _sparse(int_rows):
    return [[(j, v) for j, v in enumerate(r) if v] for r in int_rows]


def _reduce(int_rows, p):
    a = np.array([[v % p for v in r] for r in int_rows], dtype=np.int64)
    pivots = list(rref_mod_p(a, p))
    return a, pivots


def _ratrecon(a, m):
    """Find r/s ≡ a (mod m) with |r|, s ≤ sqrt(m/2), or None."""
    bound = isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound or gcd(r1, abs(s1)) != 1:
        return None
    return Fraction(r1, s1)


def _check(sparse_rows, v):
    den = 1
    for x in v:
        den = lcm(den, x.denominator)
    iv = [int(x * den) for x in v]
    return all(sum(c * iv[j] for j, c in row) == 0 for row in sparse_rows)


def _basis_from_residues(residues, modulus, pivots, free, ncols):
    basis = []
    for f_idx, f in enumerate(free):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            val = residues[i][f_idx]
            if val:
                x = _ratrecon((-val) % modulus, modulus)
                if x is None:
                    return None
                v[pc] = x
        basis.append(tuple(v))
    return basis


def _primes():
    yield from PRIMES
    p = PRIMES[-1]
    while True:
        p = prevprime(p)
        yield p


def nullspace(rows, ncols=None, max_primes=512):
    """Canonical right-kernel basis of a rational matrix given as a list of rows."""
    rows = [list(r) for r in rows]
    if not rows:
        return exact_nullspace(rows, ncols=ncols)
    ncols = len(rows[0])
    int_rows = _integer_rows(rows)
    sparse_rows = _sparse(int_rows)
    if not any(sparse_rows):
        return exact_nullspace(rows)

    pivots = None
    residues = None
    modulus = 1
    used = 0
    next_try = 1
    for p in islice(_primes(), max_primes):
        a, piv = _reduce(int_rows, p)
        if pivots is None or (-len(piv), piv) < (-len(pivots), pivots):
            # first prime, or every earlier prime was unlucky: the pivot set
            # over Q has maximal size and is lexicographically first
            pivots, modulus, residues, used, next_try = piv, 1, None, 0, 1
        elif piv != pivots:
            continue
        free = [c for c in range(ncols) if c not in set(pivots)]
        if not free:
            return []
        block = [[int(a[i, f]) for f in free] for i in range(len(pivots))]
        if residues is None:
            residues, modulus = block, p
        else:
            residues = [
                [_crt(x, modulus, y, p) for x, y in zip(rx, ry)] for rx, ry in zip(residues, block)
            ]
            modulus *= p
        used += 1
        if used < next_try:
            continue
        next_try = used + max(1, used // 2)
        basis = _basis_from_residues(residues, modulus, pivots, free, ncols)
        if basis is not None and all(_check(sparse_rows, v) for v in basis):
            return basis
    return exact_nullspace(rows)


def _crt(x, m, y, p):
    # solve z ≡ x (mod m), z ≡ y (mod p)
    t = ((y - x) * pow(m, -1, p)) % p
    return x + m * t


def nullity(rows, ncols=None, known=()):
    """Exact kernel dimension.

    ``known`` may list vectors already known to lie in the kernel; if they are
    independent and as numerous as the kernel modulo the first prime, that count
    is certified without any reconstruction.
    """
    rows = [list(r) for r in rows]
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return ncols
    ncols = len(rows[0])
    known = [tuple(v) for v in known]
    if known:
        int_rows = _integer_rows(rows)
        _, piv = _reduce(int_rows, PRIMES[0])
        bound = ncols - len(piv)
        sparse_rows = _sparse(int_rows)
        if (
            len(known) == bound
            and all(_check(sparse_rows, v) for v in known)
            and exact_rank([list(v) for v in known]) == len(known)
        ):
            return bound
    return len(nullspace(rows))


def rank(rows):
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    return len(rows[0]) - nullity(rows)
