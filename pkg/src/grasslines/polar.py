"""Conics, polarity and polar triangles in P₂.

A smooth conic ᵗxAx = 0 defines the polarity x ↦ ᵗxA. A triple (p, q, r) is a
polar triangle when ᵗpAq = ᵗqAr = ᵗrAp = 0; a doubled vertex (p, p, q) then
lies on the conic with q on its tangent. A conic B is apolar to A when the
trace pairing Σ aⁱʲ b_ij of A⁻¹ with B vanishes; apolar conics through two
vertices of a polar triangle pass through the third, and conversely.
"""

from fractions import Fraction

from .core.matrix import RatMatrix, dot, nullspace, rank
from .points import ProjPoint, canonical

__all__ = [
    "Conic",
    "Triangle",
    "PolarError",
    "polar_line",
    "pole",
    "is_polar_triangle",
    "apolar",
    "apolar_family_basis",
    "contains",
    "contains_twice",
    "third_point_closure",
    "non_polar_witness",
]


class PolarError(ValueError):
    pass


class Conic:
    """The conic ᵗxMx = 0 for a symmetric 3×3 matrix M."""

    __slots__ = ("M",)

    def __init__(self, M):
        M = M if isinstance(M, RatMatrix) else RatMatrix(M)
        if M.shape != (3, 3) or not M.is_symmetric():
            raise PolarError("a conic needs a symmetric 3×3 matrix")
        if M.is_zero():
            raise PolarError("the zero matrix does not define a conic")
        self.M = M

    def is_smooth(self):
        return self.M.det() != 0

    def __call__(self, x):
        return dot(x, self.M @ x)

    def bilinear(self, x, y):
        return dot(x, self.M @ y)

    def gradient(self, x):
        return self.M @ x

    def __eq__(self, other):
        if not isinstance(other, Conic):
            return NotImplemented
        return rank([self._flat(), other._flat()]) == 1

    def __hash__(self):
        return hash(canonical(self._flat()))

    def _flat(self):
        return [x for r in self.M.rows for x in r]

    def __repr__(self):
        return f"Conic({self.M!r})"

    def to_json(self):
        from .core.rational import format_rational

        return {"matrix": [[format_rational(x) for x in r] for r in self.M.rows]}

    @classmethod
    def from_json(cls, obj):
        return cls(obj["matrix"])


class Triangle:
    """Three points of P₂, at least two of them distinct.

    A degenerate triangle is stored as (p, p, q): the doubled vertex first.
    """

    __slots__ = ("p", "q", "r", "degenerate")

    def __init__(self, p, q, r):
        pts = [x if isinstance(x, ProjPoint) else ProjPoint(x) for x in (p, q, r)]
        if any(len(x) != 3 for x in pts):
            raise PolarError("triangle vertices must be points of P₂")
        distinct = set(pts)
        if len(distinct) == 1:
            raise PolarError("a triangle needs at least two different points")
        self.degenerate = len(distinct) == 2
        if self.degenerate:
            double = next(x for x in pts if pts.count(x) == 2)
            single = next(x for x in pts if x != double)
            pts = [double, double, single]
        self.p, self.q, self.r = pts

    def vertices(self):
        return (self.p, self.q, self.r)

    def __repr__(self):
        return f"Triangle({self.p!r}, {self.q!r}, {self.r!r})"

    def to_json(self):
        from .core.rational import format_rational

        return {"points": [[format_rational(x) for x in v] for v in self.vertices()]}

    @classmethod
    def from_json(cls, obj):
        return cls(*obj["points"])


def _smooth(c):
    if not c.is_smooth():
        raise PolarError("the conic is singular")


def _coords(p):
    return p.coords if isinstance(p, ProjPoint) else tuple(Fraction(x) for x in p)


def polar_line(c, p):
    """The row vector ᵗp·M of the polar of p."""
    _smooth(c)
    return c.M.rmul_vector(_coords(p))


def pole(c, line):
    """The point whose polar is the given line."""
    _smooth(c)
    return ProjPoint(c.M.inverse() @ line)


def is_polar_triangle(c, t):
    _smooth(c)
    if not isinstance(t, Triangle):
        raise PolarError("invalid triangle")
    p, q, r = (v.coords for v in t.vertices())
    return c.bilinear(p, q) == 0 and c.bilinear(q, r) == 0 and c.bilinear(r, p) == 0


def _adjugate(M):
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            r = [k for k in range(3) if k != j]
            s = [k for k in range(3) if k != i]
            minor = M[r[0], s[0]] * M[r[1], s[1]] - M[r[0], s[1]] * M[r[1], s[0]]
            row.append(minor if (i + j) % 2 == 0 else -minor)
        rows.append(row)
    return RatMatrix(rows)


def _pairing(a_inv, b):
    return sum((a_inv[i, j] * b[i, j] for i in range(3) for j in range(3)), Fraction(0))


def apolar(c, b):
    """Σ aⁱʲ b_ij = 0 with (aⁱʲ) the inverse of c's matrix."""
    _smooth(c)
    return _pairing(_adjugate(c.M), b.M) == 0


_SYM = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


def _sym_from_vector(v):
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for (i, j), x in zip(_SYM, v):
        m[i][j] = m[j][i] = x
    return RatMatrix(m)


def _apolar_row(c):
    adj = _adjugate(c.M)
    return [adj[i, j] * (1 if i == j else 2) for i, j in _SYM]


def apolar_family_basis(c):
    """Five conics spanning the apolar family of c."""
    _smooth(c)
    return [Conic(_sym_from_vector(v)) for v in nullspace([_apolar_row(c)])]


def contains(b, p):
    return b(_coords(p)) == 0


def _proportional(u, v):
    return rank([list(u), list(v)]) <= 1


def contains_twice(b, p, q, c):
    """b passes through p and is singular there or tangent to the polar of q."""
    p = _coords(p)
    if b(p) != 0:
        return False
    grad = b.gradient(p)
    if all(x == 0 for x in grad):
        return True
    return _proportional(grad, polar_line(c, q))


def third_point_closure(c, t, b):
    """Whether the closure property holds for this (polar triangle, apolar conic) pair."""
    if not is_polar_triangle(c, t):
        raise PolarError("the triangle is not a polar triangle of the conic")
    if not apolar(c, b):
        raise PolarError("the conic is not apolar")
    if t.degenerate:
        p, q = t.p.coords, t.r.coords
        twice = contains_twice(b, p, q, c)
        on_q = contains(b, q)
        # (p, p) on b forces q; (p, q) on b forces p twice
        return (not twice or on_q) and (not (contains(b, p) and on_q) or twice)
    on = [contains(b, v) for v in t.vertices()]
    return sum(on) != 2


def _violates(c, t, b):
    if t.degenerate:
        p, q = t.p.coords, t.r.coords
        twice = contains_twice(b, p, q, c)
        on_q = contains(b, q)
        return (twice and not on_q) or (contains(b, p) and on_q and not twice)
    return sum(contains(b, v) for v in t.vertices()) == 2


def non_polar_witness(c, t):
    """An apolar conic through exactly two vertices of a non-polar triangle."""
    _smooth(c)
    if is_polar_triangle(c, t):
        raise PolarError("the triangle is a polar triangle: no witness exists")
    if t.degenerate:
        b = _degenerate_witness(c, t)
    else:
        b = _distinct_witness(c, t)
    if not (apolar(c, b) and _violates(c, t, b)):
        raise PolarError("witness verification failed")
    return b


def _distinct_witness(c, t):
    G = RatMatrix.from_columns([v.coords for v in t.vertices()])
    if G.det() == 0:
        raise PolarError(
            "three distinct collinear points: every apolar conic through two of them would "
            "contain the line, contradicting the invertibility of the conic's matrix"
        )
    adj = _adjugate(G.T @ c.M @ G)
    # first nonzero a^{ij}: b_kk = 2a^{ij}, b_ij = −a^{kk} passes through e_i, e_j but not e_k
    for i, j in ((0, 1), (0, 2), (1, 2)):
        if adj[i, j] != 0:
            k = 3 - i - j
            m = [[Fraction(0)] * 3 for _ in range(3)]
            m[k][k] = 2 * adj[i, j]
            m[i][j] = m[j][i] = -adj[k, k]
            Ginv = G.inverse()
            return Conic(Ginv.T @ RatMatrix(m) @ Ginv)
    raise PolarError("the triangle is a polar triangle: no witness exists")


def _degenerate_witness(c, t):
    # apolar conics through p and q, then the first that does not contain p twice
    p, q = t.p.coords, t.r.coords
    rows = [
        _apolar_row(c),
        [p[i] * p[j] * (1 if i == j else 2) for i, j in _SYM],
        [q[i] * q[j] * (1 if i == j else 2) for i, j in _SYM],
    ]
    basis = [Conic(_sym_from_vector(v)) for v in nullspace(rows)]
    for b in basis:
        if not contains_twice(b, p, q, c):
            return b
    for b1 in basis:
        for b2 in basis:
            if b1 is not b2:
                b = Conic(b1.M + b2.M)
                if not contains_twice(b, p, q, c):
                    return b
    raise PolarError("no witness found in the apolar family")
