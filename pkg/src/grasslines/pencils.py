"""Normal forms of pencils λA − μB of antisymmetric matrices.

Even size 2n: the general pencil has n distinct corank-2 members and is
congruent to (J ⊕ … ⊕ J, λ₁J ⊕ … ⊕ λₙJ). Odd size 2n+1: the kernels of the
members sweep a rational normal curve of degree n, and the pencil is congruent
to a fixed pair built from shifted identity blocks.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .antisym import (
    AntisymMatrix,
    AntisymPencil,
    pencil_matrix,
    pfaffian_generic,
    pfaffian_minor_generic,
    poly_ring_units,
)
from .core.matrix import RatMatrix, are_independent, nullspace, solve

__all__ = [
    "PencilNormalFormOdd",
    "PencilNormalFormEven",
    "PencilError",
    "pfaffian_binary",
    "binary_roots",
    "donagi_normal_form",
    "donagi_pencil",
    "center_curve",
    "even_normal_pencil",
    "even_pencil_normal_form",
    "symmetric_correction",
]


class PencilError(ValueError):
    pass


@dataclass(frozen=True)
class PencilNormalFormOdd:
    lambdas: tuple
    T: RatMatrix
    shift: Fraction = Fraction(0)

    @property
    def n(self):
        return len(self.lambdas)


@dataclass(frozen=True)
class PencilNormalFormEven:
    T: RatMatrix
    curve_basis: tuple = field(default=(), compare=False)

    @property
    def n(self):
        return (self.T.nrows - 1) // 2


def pfaffian_binary(pencil):
    """Pf(λA − μB) as a binary form of degree n."""
    if pencil.size % 2:
        raise PencilError("Pfaffian of an odd-size pencil vanishes identically")
    zero, one = poly_ring_units(2)
    return pfaffian_generic(pencil_matrix(pencil.A, pencil.B), zero=zero, one=one)


def binary_roots(f):
    """Roots of a binary form over Q.

    Returns (roots, other_degrees): ``roots`` lists ((λ, μ), multiplicity) with
    each root normalized to μ = 1 or to (1, 0); ``other_degrees`` lists the
    degrees of irreducible factors of degree > 1.
    """
    import sympy

    if f.num_vars != 2:
        raise ValueError("binary form expected")
    if f.is_zero():
        raise PencilError("the binary form vanishes identically")
    lam, mu = sympy.symbols("lam mu")
    _, factors = sympy.factor_list(f.to_sympy((lam, mu)))
    roots, other = [], []
    for g, mult in factors:
        poly = sympy.Poly(g, lam, mu)
        d = poly.total_degree()
        if d == 0:
            continue
        if d > 1:
            other.extend([d] * mult)
            continue
        a = Fraction(str(poly.coeff_monomial(lam)))
        b = Fraction(str(poly.coeff_monomial(mu)))
        # aλ + bμ = 0
        root = (Fraction(1), Fraction(0)) if a == 0 else (-b / a, Fraction(1))
        roots.append((root, int(mult)))
    roots.sort(key=lambda r: (r[0][1] == 0, r[0][0]))
    return roots, other


def donagi_pencil(lambdas):
    """The pair (J ⊕ … ⊕ J, λ₁J ⊕ … ⊕ λₙJ)."""
    n = len(lambdas)
    A = AntisymMatrix(2 * n, {(2 * i, 2 * i + 1): -1 for i in range(n)})
    B = AntisymMatrix(2 * n, {(2 * i, 2 * i + 1): -Fraction(lam) for i, lam in enumerate(lambdas)})
    return AntisymPencil(A, B)


def donagi_normal_form(pencil):
    """Basis change bringing a general even-size pencil to block normal form.

    When A itself is singular the pencil is first rebased to (A − sB, B) with
    the smallest positive integer s making A − sB invertible; s is
    returned as ``shift`` and the lambdas refer to the rebased pencil.
    """
    if pencil.size % 2:
        raise PencilError("donagi normal form needs even size")
    f = pfaffian_binary(pencil)
    if f.is_zero():
        raise PencilError("every member of the pencil is degenerate")
    roots, other = binary_roots(f)
    if other:
        raise PencilError(f"Pfaffian has irrational roots (irreducible factor degrees {sorted(other)})")
    if any(m > 1 for _, m in roots):
        raise PencilError("Pfaffian has a repeated root")

    shift = Fraction(0)
    A, B = pencil.A, pencil.B
    if any(r[1] == 0 for r, _ in roots):
        # A − sB is singular exactly when (1 : s) is a root
        bad = {r[1] / r[0] for r, _ in roots if r[0] != 0}
        s = 1
        while s in bad:
            s += 1
        shift = Fraction(s)
        A = A - B.scale(shift)
        # old (λ:μ) becomes (λ : μ − sλ), which now has μ ≠ 0
        roots = [((r[0] / (r[1] - shift * r[0]), Fraction(1)), m) for r, m in roots]
    lambdas = sorted(r[0] for r, _ in roots)

    cols = []
    for lam in lambdas:
        M = A.scale(lam) - B
        K = nullspace(M.full())
        if len(K) != 2:
            raise PencilError(f"member at λ = {lam} has corank {len(K)}, expected 2")
        u, v = K
        a = A.bilinear(u, v)
        v = tuple(-x / a for x in v)
        cols.extend([u, v])
    P = RatMatrix.from_columns(cols)
    nf = AntisymPencil(A, B).congruence(P)
    target = donagi_pencil(lambdas)
    if nf.A != target.A or nf.B != target.B:
        raise PencilError("normal form verification failed")
    return PencilNormalFormOdd(tuple(lambdas), P.inverse(), shift)


def center_curve(pencil):
    """Components (−1)^i Pf of λA − μB with row/column i removed."""
    if pencil.size % 2 == 0:
        raise PencilError("center curve needs odd size")
    zero, one = poly_ring_units(2)
    mat = pencil_matrix(pencil.A, pencil.B)
    return tuple(pfaffian_minor_generic(mat, i, zero=zero, one=one) for i in range(pencil.size))


def curve_coefficient_vectors(curve, n):
    """Vectors v_i with curve = Σ λ^i μ^(n−i) v_i."""
    return [tuple(c.coefficient((i, n - i)) for c in curve) for i in range(n + 1)]


def even_normal_pencil(n):
    """The odd-size normal form: A pairs e_i with e_(n+i), B pairs e_i with e_(n+1+i)."""
    A = AntisymMatrix(2 * n + 1, {(i, n + i): -1 for i in range(n)})
    B = AntisymMatrix(2 * n + 1, {(i, n + 1 + i): -1 for i in range(n)})
    return AntisymPencil(A, B)


def symmetric_correction(b):
    """Symmetric t (n×n) with t̄ − |t = b for antisymmetric b.

    t̄ shifts the rows of t up by one, |t shifts its columns left by one, both
    padding with zeros, so (t̄ − |t)_ij = t_(i+1,j) − t_(i,j+1). Row 0 of t is
    zero and the rest follows from t_(i+1,j) = t_(i,j+1) + b_ij, running over
    j from n−1 down to 1.
    """
    n = len(b)
    t = [[Fraction(0)] * n for _ in range(n)]

    def get(i, j):
        return t[i][j] if i < n and j < n else Fraction(0)

    for j in range(n - 1, 0, -1):
        for i in range(j):
            val = get(i, j + 1) + b[i][j]
            t[i + 1][j] = val
            t[j][i + 1] = val
    return t


def even_pencil_normal_form(pencil):
    """Three-step normal form of an odd-size pencil whose members all have corank 1."""
    size = pencil.size
    if size % 2 == 0:
        raise PencilError("even_pencil_normal_form needs odd size")
    n = (size - 1) // 2
    A, B = pencil.A, pencil.B
    curve = center_curve(pencil)
    if all(c.is_zero() for c in curve):
        raise PencilError("every member of the pencil has corank ≥ 2")

    # step 1: the curve's coefficient vectors become e_n, …, e_2n
    upper = curve_coefficient_vectors(curve, n)
    if not are_independent(upper):
        _raise_degenerate(curve)
    # step 2: extend to a basis with A in symplectic shape
    Af = A.full()
    tA_upper = [Af.rmul_vector(v) for v in upper]
    lower = []
    for k in range(n):
        rows = [Af.rmul_vector(e) for e in lower] + tA_upper[:n]
        rhs = [Fraction(0)] * len(lower) + [Fraction(int(i == k)) for i in range(n)]
        x = solve([list(r) for r in rows], rhs)
        if x is None:
            raise PencilError("basis extension failed: A does not have rank 2n")
        lower.append(x)
    # step 3: kill the B-block among e_0, …, e_(n−1)
    b = [[B.bilinear(lower[i], lower[j]) for j in range(n)] for i in range(n)]
    t = symmetric_correction(b)
    basis = [
        tuple(x + sum((t[i][j] * upper[i][r] for i in range(n)), Fraction(0)) for r, x in enumerate(lower[j]))
        for j in range(n)
    ] + list(upper)
    P = RatMatrix.from_columns(basis)
    nf = pencil.congruence(P)
    target = even_normal_pencil(n)
    if nf.A != target.A or nf.B != target.B:
        raise PencilError("normal form verification failed")
    return PencilNormalFormEven(P.inverse(), tuple(upper))


def _raise_degenerate(curve):
    import sympy

    lam, mu = sympy.symbols("lam mu")
    g = sympy.Integer(0)
    for c in curve:
        g = sympy.gcd(g, c.to_sympy((lam, mu)))
    if sympy.Poly(g, lam, mu).total_degree() > 0:
        raise PencilError(f"a member of the pencil has corank ≥ 3 (common factor {g} of the center curve)")
    raise PencilError("degenerate center curve: coefficient vectors are dependent")
