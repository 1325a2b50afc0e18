"""Lines of a linear section G(1,N) ∩ H^l.

A section is given dually by l independent antisymmetric matrices; a line
span{p, q} belongs to it iff ᵗp Aᵢ q = 0 for every i.
"""

from fractions import Fraction

from .antisym import AntisymMatrix, AntisymPencil
from .core.matrix import nullspace, rank
from .pencils import PencilError, binary_roots, center_curve, pfaffian_binary
from .points import LineRep, ProjPoint, canonical

__all__ = [
    "SectionSpec",
    "pluecker",
    "line_in_section",
    "lines_through_point_dim",
    "exceptional_locus_pencil",
    "center_hyperplane",
    "lines_through_point",
    "transport_hyperplane",
]


class SectionSpec:
    """(N, [A₁, …, A_l]) with independent antisymmetric matrices of size N+1."""

    __slots__ = ("N", "matrices")

    def __init__(self, N, matrices):
        matrices = tuple(matrices)
        if N < 3:
            raise ValueError("N must be at least 3")
        if not matrices:
            raise ValueError("a section needs at least one matrix")
        if any(not isinstance(a, AntisymMatrix) or a.size != N + 1 for a in matrices):
            raise ValueError(f"every matrix must be antisymmetric of size {N + 1}")
        if rank([list(a.vector()) for a in matrices]) != len(matrices):
            raise ValueError("section matrices are linearly dependent")
        self.N = N
        self.matrices = matrices

    @property
    def l(self):
        return len(self.matrices)

    @property
    def section_dim(self):
        return 2 * (self.N - 1) - self.l

    def transform(self, T):
        return SectionSpec(self.N, [a.transform(T) for a in self.matrices])

    def recombine(self, M):
        """Replace Aᵢ by Σⱼ M[i][j] Aⱼ."""
        mats = []
        for row in M:
            acc = AntisymMatrix.zero(self.N + 1)
            for c, a in zip(row, self.matrices):
                acc = acc + a.scale(c)
            mats.append(acc)
        return SectionSpec(self.N, mats)

    def pencil(self):
        if self.l != 2:
            raise ValueError("section is not a pencil")
        return AntisymPencil(*self.matrices)

    def to_json(self):
        return {"N": self.N, "matrices": [a.to_json() for a in self.matrices]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["N"]), [AntisymMatrix.from_json(m) for m in obj["matrices"]])

    def __eq__(self, other):
        if isinstance(other, SectionSpec):
            return self.N == other.N and self.matrices == other.matrices
        return NotImplemented

    def __hash__(self):
        return hash((self.N, self.matrices))


def pluecker(line):
    """Canonically scaled 2×2 minors p_i q_j − p_j q_i, (i<j) in lexicographic order."""
    p, q = line.p.coords, line.q.coords
    n = len(p)
    return canonical([p[i] * q[j] - p[j] * q[i] for i in range(n) for j in range(i + 1, n)])


def _check_dims(line_or_point, s):
    n = len(line_or_point.p) if isinstance(line_or_point, LineRep) else len(line_or_point)
    if n != s.N + 1:
        raise ValueError(f"dimension mismatch: point has {n} coordinates, section lives in P_{s.N}")


def line_in_section(line, s):
    _check_dims(line, s)
    return all(a.bilinear(line.p.coords, line.q.coords) == 0 for a in s.matrices)


def _incidence_rows(p, s):
    coords = p.coords if isinstance(p, ProjPoint) else tuple(p)
    return [list(a.row_form(coords)) for a in s.matrices]


def lines_through_point_dim(p, s):
    """Projective dimension of the family of section lines through p (−1 if none)."""
    p = p if isinstance(p, ProjPoint) else ProjPoint(p)
    _check_dims(p, s)
    return s.N - 1 - rank(_incidence_rows(p, s))


def lines_through_point(p, s):
    """Basis of {q : ᵗp Aᵢ q = 0 ∀i}; the section lines through p are p∧q."""
    p = p if isinstance(p, ProjPoint) else ProjPoint(p)
    return nullspace(_incidence_rows(p, s))


def exceptional_locus_pencil(pencil):
    """Kernel lines of the degenerate members (even size) or the center curve (odd size)."""
    if pencil.size % 2 == 0:
        f = pfaffian_binary(pencil)
        roots, other = binary_roots(f)
        if other:
            raise PencilError(f"Pfaffian has irrational roots (irreducible factor degrees {sorted(other)})")
        lines = []
        for (lam, mu), _ in roots:
            K = pencil.member(lam, mu).kernel()
            if len(K) != 2:
                raise PencilError(f"member at ({lam}:{mu}) has corank {len(K)}, expected 2")
            lines.append(LineRep(*K))
        return lines
    curve = center_curve(pencil)
    n = (pencil.size - 1) // 2
    if all(c.is_zero() for c in curve) or any((not c.is_zero()) and c.degree != n for c in curve):
        raise PencilError("pencil has a member of corank ≥ 2")
    return curve


def center_hyperplane(pencil, at):
    """The hyperplane swept by the section lines through the center c_(λ:μ)."""
    lam, mu = (Fraction(x) for x in at)
    if lam == 0 and mu == 0:
        raise ValueError("(0:0) is not a point of P_1")
    curve = exceptional_locus_pencil(pencil)
    c = tuple(comp.evaluate((lam, mu)) for comp in curve)
    if all(x == 0 for x in c):
        raise PencilError(f"member at ({lam}:{mu}) has corank ≥ 3")
    for m in (pencil.A, pencil.B):
        row = m.row_form(c)
        if any(x != 0 for x in row):
            return canonical(row)
    raise PencilError("center lies in the kernel of the whole pencil")


def transport_hyperplane(h, T):
    """Image of a hyperplane (row vector) under the point map x ↦ T·x."""
    return canonical(T.inverse().rmul_vector(h))
