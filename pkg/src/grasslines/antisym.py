"""Antisymmetric matrices, Pfaffians, coranks and tangency tests.

A hyperplane of P(⋀²C^{N+1}) is an antisymmetric matrix A of size N+1, and the
line spanned by p, q lies on it iff ᵗpAq = 0.
"""

from fractions import Fraction

from .core.matrix import RatMatrix, nullspace, rank, vec
from .core.poly import HomogPoly
from .core.rational import format_rational, to_rational

__all__ = [
    "AntisymMatrix",
    "AntisymPencil",
    "AntisymNet",
    "pfaffian",
    "pfaffian_generic",
    "pfaffian_minor",
    "pfaffian_minor_generic",
    "corank",
    "dual_grassmannian_member",
    "tangency",
    "symplectic",
    "pencil_matrix",
    "net_matrix",
    "poly_ring_units",
]


class AntisymMatrix:
    """Antisymmetric matrix stored by its strictly upper entries."""

    __slots__ = ("size", "upper", "_full")

    def __init__(self, size, upper=None):
        if size < 1:
            raise ValueError("size must be positive")
        clean = {}
        for (i, j), v in (upper or {}).items():
            v = to_rational(v)
            if not (0 <= i < size and 0 <= j < size) or i == j:
                raise ValueError(f"bad index pair ({i}, {j})")
            if i > j:
                i, j, v = j, i, -v
            if v != 0:
                clean[(i, j)] = v
        self.size = size
        self.upper = clean
        self._full = None

    @classmethod
    def from_matrix(cls, m):
        m = m if isinstance(m, RatMatrix) else RatMatrix(m)
        if not m.is_antisymmetric():
            raise ValueError("matrix is not antisymmetric")
        n = m.nrows
        return cls(n, {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n)})

    @classmethod
    def from_vector(cls, size, v):
        """Inverse of ``vector``: upper entries in lexicographic (i<j) order."""
        pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
        return cls(size, dict(zip(pairs, v)))

    @classmethod
    def zero(cls, size):
        return cls(size)

    def entry(self, i, j):
        if i < j:
            return self.upper.get((i, j), Fraction(0))
        if i > j:
            return -self.upper.get((j, i), Fraction(0))
        return Fraction(0)

    def __getitem__(self, ij):
        return self.entry(*ij)

    def full(self):
        if self._full is None:
            n = self.size
            self._full = RatMatrix([[self.entry(i, j) for j in range(n)] for i in range(n)])
        return self._full

    def rows(self):
        return self.full().rows

    def vector(self):
        n = self.size
        return tuple(self.entry(i, j) for i in range(n) for j in range(i + 1, n))

    def __eq__(self, other):
        if isinstance(other, AntisymMatrix):
            return self.size == other.size and self.upper == other.upper
        return NotImplemented

    def __hash__(self):
        return hash((self.size, frozenset(self.upper.items())))

    def __repr__(self):
        return f"AntisymMatrix({self.size}, {{{', '.join(f'{k}: {v}' for k, v in sorted(self.upper.items()))}}})"

    def __add__(self, other):
        self._same(other)
        out = dict(self.upper)
        for k, v in other.upper.items():
            out[k] = out.get(k, 0) + v
        return AntisymMatrix(self.size, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c):
        c = to_rational(c)
        return AntisymMatrix(self.size, {k: c * v for k, v in self.upper.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def _same(self, other):
        if self.size != other.size:
            raise ValueError("size mismatch")

    def is_zero(self):
        return not self.upper

    def bilinear(self, p, q):
        """ᵗp·A·q."""
        p, q = vec(p), vec(q)
        total = Fraction(0)
        for (i, j), v in self.upper.items():
            total += v * (p[i] * q[j] - p[j] * q[i])
        return total

    def row_form(self, p):
        """The row vector ᵗp·A."""
        return self.full().rmul_vector(p)

    def congruence(self, P):
        """ᵗP·A·P, i.e. the matrix of the form in the basis given by P's columns."""
        P = P if isinstance(P, RatMatrix) else RatMatrix(P)
        return AntisymMatrix.from_matrix(P.T @ self.full() @ P)

    def transform(self, T):
        """ᵗT⁻¹·A·T⁻¹, the action of P(T) on hyperplanes."""
        T = T if isinstance(T, RatMatrix) else RatMatrix(T)
        return self.congruence(T.inverse())

    def kernel(self):
        return nullspace(self.full())

    def rank(self):
        return rank(self.full())

    def to_json(self):
        return {
            "size": self.size,
            "upper": [[i, j, format_rational(v)] for (i, j), v in sorted(self.upper.items())],
        }

    @classmethod
    def from_json(cls, obj):
        size = int(obj["size"])
        upper = {}
        for i, j, v in obj.get("upper", []):
            i, j = int(i), int(j)
            if not i < j:
                raise ValueError("upper entries must satisfy i < j")
            upper[(i, j)] = to_rational(v)
        return cls(size, upper)


def symplectic(n):
    """The standard form J ⊕ … ⊕ J with J = [[0,−1],[1,0]] on 2n coordinates."""
    return AntisymMatrix(2 * n, {(2 * i, 2 * i + 1): -1 for i in range(n)})


class AntisymPencil:
    __slots__ = ("A", "B")

    def __init__(self, A, B):
        if A.size != B.size:
            raise ValueError("pencil members must have equal size")
        self.A = A
        self.B = B

    @property
    def size(self):
        return self.A.size

    def member(self, lam, mu):
        """λA − μB."""
        return self.A.scale(lam) - self.B.scale(mu)

    def transform(self, T):
        return AntisymPencil(self.A.transform(T), self.B.transform(T))

    def congruence(self, P):
        return AntisymPencil(self.A.congruence(P), self.B.congruence(P))

    def __iter__(self):
        return iter((self.A, self.B))


class AntisymNet:
    __slots__ = ("A", "B", "C")

    def __init__(self, A, B, C):
        if not A.size == B.size == C.size:
            raise ValueError("net members must have equal size")
        if rank([list(A.vector()), list(B.vector()), list(C.vector())]) < 3:
            raise ValueError("net members are linearly dependent")
        self.A = A
        self.B = B
        self.C = C

    @property
    def size(self):
        return self.A.size

    def member(self, lam, mu, nu):
        """λA + μB + νC."""
        return self.A.scale(lam) + self.B.scale(mu) + self.C.scale(nu)

    def transform(self, T):
        return AntisymNet(self.A.transform(T), self.B.transform(T), self.C.transform(T))

    def __iter__(self):
        return iter((self.A, self.B, self.C))


def pfaffian_generic(entries, indices=None, zero=Fraction(0), one=Fraction(1)):
    """Pfaffian of an antisymmetric matrix with entries in any commutative ring.

    ``entries`` is a square list of lists. Expansion along the first remaining
    row, memoized on the set of remaining indices:
    Pf = Σ_k (−1)^(k+1) a[i₀][i_k] Pf(indices without i₀, i_k).
    """
    indices = tuple(range(len(entries))) if indices is None else tuple(indices)
    if len(indices) % 2:
        return zero
    memo = {(): one}

    def pf(idx):
        if idx in memo:
            return memo[idx]
        i0 = idx[0]
        total = zero
        for k in range(1, len(idx)):
            a = entries[i0][idx[k]]
            if a == 0:
                continue
            rest = pf(idx[1:k] + idx[k + 1 :])
            if rest == 0:
                continue
            total = total + a * rest if k % 2 else total - a * rest
        memo[idx] = total
        return total

    return pf(indices)


def poly_ring_units(num_vars):
    return HomogPoly.zero(num_vars), HomogPoly.constant(num_vars, 1)


def pfaffian(a):
    """Pfaffian of an antisymmetric matrix; 0 for odd size."""
    if a.size % 2:
        return Fraction(0)
    return pfaffian_generic(a.full().rows)


def pfaffian_minor_generic(entries, i, zero=Fraction(0), one=Fraction(1)):
    n = len(entries)
    if not 0 <= i < n:
        raise IndexError(f"index {i} out of range for size {n}")
    rest = tuple(k for k in range(n) if k != i)
    pf = pfaffian_generic(entries, rest, zero=zero, one=one)
    return -pf if i % 2 else pf


def pfaffian_minor(a, i):
    """(−1)^i times the Pfaffian of ``a`` with row and column i deleted."""
    if a.size % 2 == 0:
        raise ValueError("pfaffian_minor needs an odd-size matrix")
    return pfaffian_minor_generic(a.full().rows, i)


def corank(a):
    return a.size - a.rank()


def dual_grassmannian_member(a):
    """True iff the hyperplane is tangent to G(1,N), i.e. corank ≥ 2."""
    if a.size < 4:
        raise ValueError("dual Grassmannian membership needs size N+1 ≥ 4")
    return corank(a) >= 2


def tangency(a, line):
    """True iff the hyperplane contains the tangent space of G(1,N) at the line."""
    if a.size != len(line.p):
        raise ValueError("dimension mismatch between matrix and line")
    full = a.full()
    return all(x == 0 for x in full @ line.p.coords) and all(x == 0 for x in full @ line.q.coords)


def pencil_matrix(A, B):
    """λA − μB as a list of lists of binary linear forms."""
    n = A.size
    return [
        [HomogPoly.linear([A.entry(i, j), -B.entry(i, j)]) for j in range(n)] for i in range(n)
    ]


def net_matrix(A, B, C):
    """λA + μB + νC as a list of lists of ternary linear forms."""
    n = A.size
    return [
        [HomogPoly.linear([A.entry(i, j), B.entry(i, j), C.entry(i, j)]) for j in range(n)]
        for i in range(n)
    ]
