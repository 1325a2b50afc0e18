"""Dense exact matrices over Q with Gauss-Jordan elimination.

Vectors are plain tuples of Fraction. Every routine here is exact; the
modular fast path for large homogeneous systems lives in ``modular``.
"""

from fractions import Fraction

from .rational import to_rational

__all__ = [
    "RatMatrix",
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "solve",
    "det",
    "vec",
    "dot",
    "is_zero_vector",
    "are_independent",
    "span_contains",
]


def vec(entries):
    return tuple(to_rational(x) for x in entries)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vector(v):
    return all(x == 0 for x in v)


class RatMatrix:
    """Immutable rectangular matrix of Fractions."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows):
        rows = tuple(tuple(to_rational(x) for x in r) for r in rows)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self._rows = rows
        self.nrows = len(rows)
        self.ncols = width

    @classmethod
    def _trusted(cls, rows):
        # rows already tuples of Fraction
        m = cls.__new__(cls)
        m._rows = rows
        m.nrows = len(rows)
        m.ncols = len(rows[0])
        return m

    @classmethod
    def identity(cls, n):
        one, zero = Fraction(1), Fraction(0)
        return cls._trusted(tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, nrows, ncols):
        z = Fraction(0)
        return cls._trusted(tuple((z,) * ncols for _ in range(nrows)))

    @classmethod
    def from_columns(cls, cols):
        cols = [vec(c) for c in cols]
        return cls._trusted(tuple(zip(*cols)))

    @classmethod
    def diag(cls, entries):
        entries = vec(entries)
        n = len(entries)
        z = Fraction(0)
        return cls._trusted(
            tuple(tuple(entries[i] if i == j else z for j in range(n)) for i in range(n))
        )

    @classmethod
    def block_diag(cls, blocks):
        blocks = [b if isinstance(b, RatMatrix) else RatMatrix(b) for b in blocks]
        n = sum(b.nrows for b in blocks)
        m = sum(b.ncols for b in blocks)
        out = [[Fraction(0)] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b._rows):
                out[r0 + i][c0 : c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._trusted(tuple(tuple(r) for r in out))

    @property
    def shape(self):
        return (self.nrows, self.ncols)

    @property
    def rows(self):
        return self._rows

    def row(self, i):
        return self._rows[i]

    def col(self, j):
        return tuple(r[j] for r in self._rows)

    def columns(self):
        return tuple(zip(*self._rows))

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i][j]

    def tolist(self):
        return [list(r) for r in self._rows]

    @property
    def T(self):
        return RatMatrix._trusted(tuple(zip(*self._rows)))

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self._rows)
        return f"RatMatrix([{body}])"

    def __add__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix._trusted(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __sub__(self, other):
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return RatMatrix._trusted(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._rows, other._rows))
        )

    def __neg__(self):
        return RatMatrix._trusted(tuple(tuple(-a for a in r) for r in self._rows))

    def scale(self, c):
        c = to_rational(c)
        return RatMatrix._trusted(tuple(tuple(c * a for a in r) for r in self._rows))

    def __rmul__(self, c):
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, RatMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return RatMatrix._trusted(
                tuple(tuple(dot(r, c) for c in cols) for r in self._rows)
            )
        v = vec(other)
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(dot(r, v) for r in self._rows)

    def rmul_vector(self, v):
        """Row vector times matrix, i.e. ᵗv·M."""
        v = vec(v)
        if len(v) != self.nrows:
            raise ValueError("vector length mismatch")
        return tuple(dot(v, c) for c in self.columns())

    def submatrix(self, rows, cols):
        return RatMatrix._trusted(tuple(tuple(self._rows[i][j] for j in cols) for i in rows))

    def hstack(self, other):
        return RatMatrix._trusted(tuple(a + b for a, b in zip(self._rows, other._rows)))

    def vstack(self, other):
        return RatMatrix._trusted(self._rows + other._rows)

    def is_square(self):
        return self.nrows == self.ncols

    def is_zero(self):
        return all(x == 0 for r in self._rows for x in r)

    def is_symmetric(self):
        return self.is_square() and self == self.T

    def is_antisymmetric(self):
        n = self.nrows
        return self.is_square() and all(
            self._rows[i][j] == -self._rows[j][i] for i in range(n) for j in range(i, n)
        )

    def trace(self):
        return sum((self._rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def det(self):
        return det(self)

    def rank(self):
        return rank(self)

    def inverse(self):
        if not self.is_square():
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(self._rows)]
        red, r, piv = _rref_lists(aug, ncols_limit=n)
        if r < n or piv[:n] != list(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return RatMatrix._trusted(tuple(tuple(row[n:]) for row in red[:n]))


def _as_lists(m):
    if isinstance(m, RatMatrix):
        return [list(r) for r in m.rows]
    return [[to_rational(x) for x in r] for r in m]


def _rref_lists(a, ncols_limit=None):
    """In-place Gauss-Jordan on a list of Fraction rows.

    Pivots are searched only in the first ``ncols_limit`` columns (default all),
    which lets callers reduce an augmented matrix.
    """
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    limit = ncols if ncols_limit is None else ncols_limit
    pivots = []
    r = 0
    for c in range(limit):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[r], a[p] = a[p], a[r]
        prow = a[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow = [x * inv for x in prow]
            a[r] = prow
        nz = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(nrows):
            if i != r:
                f = a[i][c]
                if f != 0:
                    row = a[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return a, r, pivots


def rref(m):
    """Reduced row-echelon form: returns (RatMatrix, rank, pivot_columns)."""
    a = _as_lists(m)
    red, r, piv = _rref_lists(a)
    return RatMatrix._trusted(tuple(tuple(row) for row in red)), r, piv


def rank(m):
    a = _as_lists(m)
    if not a:
        return 0
    return _rref_lists(a)[1]


def nullspace(m, ncols=None):
    """Canonical basis of the right kernel.

    One vector per free column, in increasing column order; the vector has a 1
    in its free column, 0 in the other free columns. ``ncols`` is only needed
    when ``m`` is an empty list of rows.
    """
    a = _as_lists(m)
    if not a:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return [tuple(Fraction(int(i == j)) for i in range(ncols)) for j in range(ncols)]
    n = len(a[0])
    red, r, piv = _rref_lists(a)
    pivset = set(piv)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row_i, pc in enumerate(piv):
            v[pc] = -red[row_i][f]
        basis.append(tuple(v))
    return basis


def left_nullspace(m):
    """Basis of {y : ᵗy·m = 0}."""
    if isinstance(m, RatMatrix):
        return nullspace(m.T)
    return nullspace(list(zip(*m)))


def solve(m, b):
    """One exact solution x of m·x = b, or None when the system is inconsistent."""
    a = _as_lists(m)
    b = vec(b)
    n = len(a[0])
    aug = [row + [bi] for row, bi in zip(a, b)]
    red, r, piv = _rref_lists(aug, ncols_limit=n)
    for row in red[r:]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = red[i][n]
    return tuple(x)


def det(m):
    a = _as_lists(m)
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    sign = 1
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        d *= piv
        for i in range(c + 1, n):
            f = a[i][c] / piv
            if f:
                ri, rc = a[i], a[c]
                for j in range(c + 1, n):
                    ri[j] -= f * rc[j]
    return sign * d


def are_independent(vectors):
    vectors = list(vectors)
    if not vectors:
        return True
    return rank([list(v) for v in vectors]) == len(vectors)


def span_contains(vectors, v):
    vectors = [list(x) for x in vectors]
    if not vectors:
        return is_zero_vector(v)
    return rank(vectors) == rank(vectors + [list(v)])
