"""Projective points and lines given by a spanning pair of points."""

from fractions import Fraction

from .core.matrix import rank, vec
from .core.rational import format_rational

__all__ = ["ProjPoint", "LineRep", "canonical"]


def canonical(v):
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    v = vec(v)
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return v
    return tuple(x / lead for x in v)


class ProjPoint:
    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = canonical(coords)

    @classmethod
    def basis(cls, n, i):
        return cls([Fraction(int(i == j)) for j in range(n)])

    @property
    def dim(self):
        return len(self.coords) - 1

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def __eq__(self, other):
        if isinstance(other, ProjPoint):
            return self.coords == other.coords
        return NotImplemented

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "(" + ":".join(format_rational(x) for x in self.coords) + ")"


class LineRep:
    """A projective line spanned by two independent points."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        p = p if isinstance(p, ProjPoint) else ProjPoint(p)
        q = q if isinstance(q, ProjPoint) else ProjPoint(q)
        if len(p) != len(q):
            raise ValueError("points live in different spaces")
        if rank([list(p.coords), list(q.coords)]) < 2:
            raise ValueError("degenerate line: spanning points are dependent")
        self.p = p
        self.q = q

    @property
    def ambient(self):
        return len(self.p) - 1

    def point(self, s, t):
        """The point s·p + t·q."""
        return tuple(Fraction(s) * a + Fraction(t) * b for a, b in zip(self.p, self.q))

    def __repr__(self):
        return f"{self.p!r}∧{self.q!r}"
