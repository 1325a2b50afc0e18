"""Nets λA + μB + νC of antisymmetric matrices (sections G(1,N) ∩ H³).

Size 6: a general net is congruent to a normal form with four parameters
(α, β, γ, δ) and its degenerate members form a smooth plane cubic. Size 5:
every member has corank 1 and the kernels sweep a smooth projected Veronese
surface whose trisecants are exactly the lines of the section.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import isqrt, lcm

from .antisym import (
    AntisymMatrix,
    AntisymNet,
    AntisymPencil,
    net_matrix,
    pfaffian_generic,
    pfaffian_minor_generic,
    poly_ring_units,
)
from .core.matrix import RatMatrix, nullspace, rank
from .core.poly import HomogPoly, monomials, poly_matrix_kernel_check
from .grassmann import SectionSpec, line_in_section
from .pencils import PencilError, donagi_normal_form
from .points import ProjPoint

__all__ = [
    "NetError",
    "NetNormalFormG15",
    "VeroneseCenterMap",
    "ApolarityData",
    "g15_normal_net",
    "remark_cubic",
    "net_normal_form_g15",
    "dual_cubic",
    "cubic_smooth",
    "g15_family_element",
    "g15_family_parameter",
    "g15_identity_component_check",
    "veronese_center_map",
    "apolarity_data",
    "net_from_projection_center",
    "trisecant_form",
    "trisecant_points",
    "trisecant_test",
    "quadric_matrix",
]

_QUAD_ORDER = ((0, 0), (1, 1), (2, 2), (0, 1), (0, 2), (1, 2))


class NetError(ValueError):
    pass


@dataclass(frozen=True)
class NetNormalFormG15:
    """Parameters of the normal form together with the coordinate change.

    ``basis_change`` is the 3×3 matrix M with the normal-form triple equal to
    ᵗT⁻¹ (Σⱼ M₀ⱼ Xⱼ, Σⱼ M₁ⱼ Xⱼ, Σⱼ M₂ⱼ Xⱼ) T⁻¹ for the input net (X₀, X₁, X₂).
    """

    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    delta: Fraction
    T: RatMatrix
    basis_change: RatMatrix = field(default=None, compare=False)

    @property
    def params(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def net(self):
        return g15_normal_net(*self.params)


@dataclass(frozen=True)
class VeroneseCenterMap:
    components: tuple

    def __call__(self, *point):
        return tuple(c.evaluate(point) for c in self.components)

    def coefficient_matrix(self):
        return [[c.coefficient(m) for m in monomials(3, 2)] for c in self.components]

    def differential(self, point, direction):
        """Derivative of the map at ``point`` in the given direction."""
        return tuple(
            sum((d * c.derivative(k).evaluate(point) for k, d in enumerate(direction)), Fraction(0))
            for c in self.components
        )


@dataclass(frozen=True)
class ApolarityData:
    P_matrix: RatMatrix
    C_P_matrix: RatMatrix


def g15_normal_net(alpha, beta, gamma, delta):
    """The normal-form net on C⁶ with parameters (α, β, γ, δ)."""
    a, b, g, d = (Fraction(x) for x in (alpha, beta, gamma, delta))
    A = AntisymMatrix(6, {(0, 1): -1, (2, 3): -1})
    B = AntisymMatrix(6, {(2, 3): -1, (4, 5): -1})
    C = AntisymMatrix(
        6,
        {
            (0, 2): -a,
            (1, 3): -a,
            (0, 4): -g,
            (1, 4): -d,
            (1, 5): -g,
            (2, 3): -1,
            (2, 4): -b,
            (3, 5): -b,
        },
    )
    return AntisymNet(A, B, C)


def remark_cubic(alpha, beta, gamma, delta):
    """λ²μ + μ²λ + λμν − (γ²+β²)λν² − (α²+γ²)μν² + (αβδ − γ²)ν³."""
    a, b, g, d = (Fraction(x) for x in (alpha, beta, gamma, delta))
    return HomogPoly(
        3,
        3,
        {
            (2, 1, 0): 1,
            (1, 2, 0): 1,
            (1, 1, 1): 1,
            (1, 0, 2): -(g * g + b * b),
            (0, 1, 2): -(a * a + g * g),
            (0, 0, 3): a * b * d - g * g,
        },
    )


def dual_cubic(net):
    """Pf(λA + μB + νC), the degenerate members of a net on C⁶."""
    if net.size != 6:
        raise NetError("dual cubic needs a net of 6×6 matrices")
    zero, one = poly_ring_units(3)
    return pfaffian_generic(net_matrix(net.A, net.B, net.C), zero=zero, one=one)


def cubic_smooth(cubic):
    """True iff the plane cubic has no singular point over the algebraic closure.

    The partial derivatives have a common projective zero exactly when the
    quotient by the ideal they generate is infinite dimensional, which a
    Gröbner basis reads off from its leading monomials.
    """
    import sympy

    if cubic.is_zero():
        raise NetError("the zero polynomial is not a cubic")
    if cubic.num_vars != 3 or cubic.degree != 3:
        raise NetError("a ternary cubic is required")
    xs = sympy.symbols("x0 x1 x2")
    partials = [cubic.derivative(i).to_sympy(xs) for i in range(3)]
    gb = sympy.groebner([p for p in partials if p != 0], *xs, order="grevlex")
    leads = [sympy.Poly(g, *xs).monoms(order="grevlex")[0] for g in gb.exprs]
    # zero-dimensional affine cone ⟺ a pure power of every variable leads
    return all(any(m[i] > 0 and sum(m) == m[i] for m in leads) for i in range(3))


def _isqrt_rational(x):
    x = Fraction(x)
    if x < 0:
        return None
    n, d = isqrt(x.numerator), isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def _block(m, r, c):
    return RatMatrix([[m[2 * r + i, 2 * c + j] for j in range(2)] for i in range(2)])


def _blockdiag2(*blocks):
    return RatMatrix.block_diag(blocks)


def _recombine(net_mats, M):
    out = []
    for row in M:
        acc = AntisymMatrix.zero(net_mats[0].size)
        for c, a in zip(row, net_mats):
            if c:
                acc = acc + a.scale(c)
        out.append(acc)
    return out


def _read_g15(net):
    """Parameters if the net already is a normal form, else None."""
    C = net.C
    params = (-C[0, 2], -C[2, 4], -C[0, 4], -C[1, 4])
    target = g15_normal_net(*params)
    if (net.A, net.B, net.C) == (target.A, target.B, target.C):
        return params
    return None


def _conic_point(S, gamma):
    """Rational v with ᵗv S v = γ for a symmetric 2×2 S, or None."""
    s00, s01, s11 = S[0, 0], S[0, 1], S[1, 1]
    # triangular route: v = (r, 0) or (0, r)
    if s00 != 0:
        r = _isqrt_rational(gamma / s00)
        if r:
            return (r, Fraction(0))
    if s11 != 0:
        r = _isqrt_rational(gamma / s11)
        if r:
            return (Fraction(0), r)
    # general rational point of s00 x² + 2 s01 xy + s11 y² = γ z²
    import sympy
    from sympy.solvers.diophantine.diophantine import diop_ternary_quadratic

    x, y, z = sympy.symbols("x y z", integer=True)
    coeffs = [s00, 2 * s01, s11, -gamma]
    den = lcm(*(c.denominator for c in coeffs))
    a, b, c, g = (int(q * den) for q in coeffs)
    sol = diop_ternary_quadratic(a * x**2 + b * x * y + c * y**2 + g * z**2)
    if sol is None or sol == (None, None, None):
        return None
    sx, sy, sz = (int(v) for v in sol)
    if sz == 0:
        return None
    v = (Fraction(sx, sz), Fraction(sy, sz))
    if s00 * v[0] ** 2 + 2 * s01 * v[0] * v[1] + s11 * v[1] ** 2 != gamma:
        return None
    return v


def _sl2_reduction(Cbar):
    """(γ, δ, t) with t ∈ SL(2,Q) and ᵗt C̄ t = [[γ, δ], [0, γ]]."""
    detc = Cbar.det()
    g0 = _isqrt_rational(detc)
    if g0 is None:
        raise NetError(f"γ = √det(C̄) is irrational (det C̄ = {detc})")
    delta = Cbar[0, 1] - Cbar[1, 0]
    S = RatMatrix(
        [[Cbar[0, 0], (Cbar[0, 1] + Cbar[1, 0]) / 2], [(Cbar[0, 1] + Cbar[1, 0]) / 2, Cbar[1, 1]]]
    )
    if g0 == 0:
        raise NetError("det C̄ = 0: the net is not general")
    for gamma in (g0, -g0):
        v = _conic_point(S, gamma)
        if v is None:
            continue
        Sv = S @ v
        # det[v w] = 1 and ᵗv S w = δ/2
        w_rows = [[-v[1], v[0]], list(Sv)]
        M = RatMatrix(w_rows)
        w = M.inverse() @ (Fraction(1), delta / 2)
        t = RatMatrix.from_columns([v, w])
        target = RatMatrix([[gamma, delta], [0, gamma]])
        if t.T @ Cbar @ t == target:
            return gamma, delta, t
    raise NetError(
        f"no rational point on the conic ᵗv·sym(C̄)·v = ±{g0}; the final 2×2 reduction needs a field extension"
    )


def _g15_attempt(net, roles):
    A, B, C = net.A, net.B, net.C
    nf = donagi_normal_form(AntisymPencil(A, B))
    s = nf.shift
    l1, l2, l3 = (nf.lambdas[i] for i in roles)
    P0 = nf.T.inverse()
    b = (l3 - l2) / (l1 - l2)
    d = {roles[0]: 1 / (l3 - l1), roles[1]: 1 / (l3 - l2), roles[2]: 1 / (b * (l1 - l3))}
    # blocks sit in the order of nf.lambdas; reorder so roles land on blocks 0,1,2
    cols = []
    for i in roles:
        cols.append(tuple(d[i] * x for x in P0.col(2 * i)))
        cols.append(P0.col(2 * i + 1))
    P = RatMatrix.from_columns(cols)
    # (A − sB) generates the pencil used by the normal form
    M = [
        [l3, -(l3 * s + 1), Fraction(0)],
        [b * l1, -b * (l1 * s + 1), Fraction(0)],
        [Fraction(0), Fraction(0), Fraction(1)],
    ]
    A1, B1, C1 = (m.congruence(P) for m in _recombine([A, B, C], M))
    c1, c2, c3 = (-C1[2 * i, 2 * i + 1] for i in range(3))
    den = c2 - c1 - c3
    if den == 0:
        raise NetError("c₂ − c₁ − c₃ = 0: the net is not general")
    M[2] = [(M[2][j] - c1 * M[0][j] - c3 * M[1][j]) / den for j in range(3)]
    C1 = (C1 - A1.scale(c1) - B1.scale(c3)).scale(1 / den)

    full = C1.full()
    C21, C32 = _block(full, 1, 0), _block(full, 2, 1)
    dets = (C21.det(), C32.det())
    if dets[0] == 0 or dets[1] == 0:
        raise NetError("generality violated: C₂₁ or C₃₂ is singular")
    alpha, beta = _isqrt_rational(dets[0]), _isqrt_rational(dets[1])
    if alpha is None or beta is None:
        raise NetError(f"irrational square roots: need √{dets[0]} and √{dets[1]}")
    Tb = _blockdiag2(C21.scale(1 / alpha), RatMatrix.identity(2), C32.T.scale(1 / beta))
    C2 = C1.transform(Tb)
    Cbar = _block(C2.full(), 2, 0)
    gamma, delta, t = _sl2_reduction(Cbar)
    tinv = t.inverse()
    Tc = _blockdiag2(tinv, t.T, tinv)
    T = Tc @ Tb @ P.inverse()
    out = [m.transform(T) for m in _recombine([A, B, C], M)]
    target = g15_normal_net(alpha, beta, gamma, delta)
    if tuple(out) != (target.A, target.B, target.C):
        raise NetError("normal form verification failed")
    return NetNormalFormG15(alpha, beta, gamma, delta, T, RatMatrix(M))


def net_normal_form_g15(net):
    """Coordinates of C⁶ and of the net in which it takes the four-parameter normal form."""
    if net.size != 6:
        raise NetError("G(1,5) net normal form needs 6×6 matrices")
    params = _read_g15(net)
    if params is not None:
        return NetNormalFormG15(*params, RatMatrix.identity(6), RatMatrix.identity(3))
    try:
        donagi_normal_form(AntisymPencil(net.A, net.B))
    except PencilError as exc:
        raise NetError(f"sub-pencil (A, B) is not general: {exc}") from exc
    errors = []
    for roles in permutations(range(3)):
        try:
            return _g15_attempt(net, roles)
        except NetError as exc:
            errors.append(str(exc))
    raise NetError(errors[0] if len(set(errors)) == 1 else "; ".join(sorted(set(errors))))


def g15_family_parameter(gamma, delta, s):
    """(a, d) with ad + k²(a−d)² = 1, k = γ/δ, on the chord through (1, 1) of slope s."""
    k = Fraction(gamma) / Fraction(delta)
    s = Fraction(s)
    den = s + k * k * (1 - s) ** 2
    if den == 0:
        raise ValueError("slope gives no second intersection point")
    u = -(1 + s) / den
    return 1 + u, 1 + s * u


def g15_family_element(gamma, delta, a, d):
    """t = [[a, k(a−d)], [k(d−a), d]] with k = γ/δ."""
    gamma, delta = Fraction(gamma), Fraction(delta)
    if delta == 0:
        raise ValueError("δ must be nonzero")
    k = gamma / delta
    a, d = Fraction(a), Fraction(d)
    return RatMatrix([[a, k * (a - d)], [k * (d - a), d]])


def g15_identity_component_check(normal, t_param):
    """Whether T = diag(t, ᵗt⁻¹, t) maps the normal-form net into itself.

    ``t_param`` is either (a, d), expanded to the one-parameter family, or
    an explicit 2×2 matrix of determinant 1.
    """
    if normal.delta == 0:
        raise ValueError("δ must be nonzero")
    if isinstance(t_param, RatMatrix):
        t = t_param
    elif len(t_param) == 2 and all(not isinstance(x, (list, tuple)) for x in t_param):
        t = g15_family_element(normal.gamma, normal.delta, *t_param)
    else:
        t = RatMatrix(t_param)
    if t.det() != 1:
        raise ValueError(f"constraint violated: det t = {t.det()} ≠ 1")
    T = _blockdiag2(t, t.T.inverse(), t)
    net = normal.net()
    span = [list(m.vector()) for m in net]
    r = rank(span)
    return all(rank(span + [list(m.transform(T).vector())]) == r for m in net)


def veronese_center_map(net):
    """Kernel map (λ:μ:ν) ↦ ker(λA + μB + νC) of a general net on C⁵."""
    if net.size != 5:
        raise NetError("the center map needs a net of 5×5 matrices")
    zero, one = poly_ring_units(3)
    mat = net_matrix(net.A, net.B, net.C)
    comps = tuple(pfaffian_minor_generic(mat, i, zero=zero, one=one) for i in range(5))
    if any(c.is_zero() or c.degree != 2 for c in comps):
        raise NetError("a member of corank ≥ 2 was found: the net is not general")
    cmap = VeroneseCenterMap(comps)
    if rank(cmap.coefficient_matrix()) != 5:
        raise NetError("center quadrics are dependent: the net is not general")
    if not poly_matrix_kernel_check(mat, list(comps)):
        raise NetError("kernel identity failed")
    return cmap


def quadric_matrix(q):
    """Symmetric matrix b with q = ᵗx b x (off-diagonal entries are half coefficients)."""
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for i, j in _QUAD_ORDER:
        e = [0, 0, 0]
        e[i] += 1
        e[j] += 1
        c = q.coefficient(tuple(e))
        if i == j:
            m[i][i] = c
        else:
            m[i][j] = m[j][i] = c / 2
    return RatMatrix(m)


def apolarity_data(cmap):
    """The projection center P as a dual conic, with its inverse C_P."""
    rows = []
    for c in cmap.components:
        b = quadric_matrix(c)
        rows.append([b[i, j] * (1 if i == j else 2) for i, j in _QUAD_ORDER])
    K = nullspace(rows)
    if len(K) != 1:
        raise NetError(f"annihilator of the center quadrics has dimension {len(K)}, expected 1")
    p = K[0]
    P = [[Fraction(0)] * 3 for _ in range(3)]
    for (i, j), x in zip(_QUAD_ORDER, p):
        P[i][j] = P[j][i] = x
    P = RatMatrix(P)
    if P.det() == 0:
        raise NetError("P_matrix is singular: the projection center lies on the secant variety")
    return ApolarityData(P, P.inverse())


def net_from_projection_center(P, rng, bound=5):
    """A net on C⁵ whose center surface is the Veronese surface projected from P.

    The five center quadrics are a basis of the conics apolar to P, mixed by a
    seeded random matrix; the net is the kernel of the linear conditions
    (λA+μB+νC)·c ≡ 0.
    """
    P = P if isinstance(P, RatMatrix) else RatMatrix(P)
    if not P.is_symmetric() or P.det() == 0:
        raise NetError("P must be a symmetric invertible 3×3 matrix")
    # coefficient vectors c of quadrics with Σ P_ij b_ij = 0, where b_ij = c_ij / 2 off the diagonal
    basis = nullspace([[P[i, j] for i, j in _QUAD_ORDER]])
    while True:
        mix = [[Fraction(rng.randint(-bound, bound)) for _ in range(5)] for _ in range(5)]
        if RatMatrix(mix).det() != 0:
            break
    quads = []
    for row in mix:
        coeffs = [sum((c * v[k] for c, v in zip(row, basis)), Fraction(0)) for k in range(6)]
        terms = {}
        for (i, j), x in zip(_QUAD_ORDER, coeffs):
            e = [0, 0, 0]
            e[i] += 1
            e[j] += 1
            terms[tuple(e)] = x
        quads.append(HomogPoly(3, 2, terms))
    pairs = list(combinations(range(5), 2))
    cubics = monomials(3, 3)
    # unknowns: upper entries of A, B, C; equations: coefficients of Σⱼ Mᵢⱼ cⱼ
    ncols = 3 * len(pairs)
    eqs = []
    for i in range(5):
        acc = {m: [Fraction(0)] * ncols for m in cubics}
        for k, (a, b) in enumerate(pairs):
            for v in range(3):
                col = v * len(pairs) + k
                lin = [0, 0, 0]
                lin[v] = 1
                # entry (a, b) = x, entry (b, a) = −x
                for row_i, other, sign in ((a, b, 1), (b, a, -1)):
                    if row_i != i:
                        continue
                    for e, c in quads[other].coeffs.items():
                        m = tuple(x + y for x, y in zip(e, lin))
                        acc[m][col] += sign * c
        eqs.extend(acc.values())
    K = nullspace(eqs)
    if not K:
        raise NetError("no net realizes the given projection center")
    sol = K[0] if len(K) == 1 else tuple(
        sum((rng.randint(1, bound) * v[j] for v in K), Fraction(0)) for j in range(ncols)
    )
    mats = []
    for v in range(3):
        mats.append(AntisymMatrix(5, {pair: sol[v * len(pairs) + k] for k, pair in enumerate(pairs)}))
    return AntisymNet(*mats)


def _line_matrix(line, net):
    """Columns A·x, B·x, C·x with x = s·p + t·q, as binary linear forms."""
    p, q = line.p.coords, line.q.coords
    cols = []
    for m in net:
        full = m.full()
        mp, mq = full @ p, full @ q
        cols.append([HomogPoly.linear([a, b]) for a, b in zip(mp, mq)])
    return [[cols[j][i] for j in range(3)] for i in range(len(p))]


def _det3(m):
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def trisecant_form(line, net):
    """Binary form in (s, t) cutting out the centers on the line s·p + t·q.

    A point x is a center iff A·x, B·x, C·x are dependent; the gcd of the
    3×3 minors of that 5×3 matrix restricted to the line is the
    intersection form. For a line of the section it has degree 3.
    """
    import sympy

    if net.size != 5:
        raise NetError("trisecants need a net of 5×5 matrices")
    rows = _line_matrix(line, net)
    s, t = sympy.symbols("s t")
    g = sympy.Integer(0)
    for idx in combinations(range(5), 3):
        minor = _det3([rows[i] for i in idx])
        if not minor.is_zero():
            g = sympy.gcd(g, minor.to_sympy((s, t)))
    if g == 0:
        raise NetError("the line lies on the center surface")
    return HomogPoly.from_sympy(g, (s, t))


def trisecant_points(line, net):
    """Intersection with the center surface.

    Returns (points, other_degrees): ``points`` lists (x, (λ:μ:ν), multiplicity)
    for each rational intersection point x; ``other_degrees`` lists degrees of
    irreducible factors without rational roots.
    """
    from .pencils import binary_roots

    f = trisecant_form(line, net)
    if f.degree == 0:
        return [], []
    roots, other = binary_roots(f)
    out = []
    for (s, t), mult in roots:
        x = ProjPoint(line.point(s, t))
        cols = [m.full() @ x.coords for m in net]
        K = nullspace([list(r) for r in zip(*cols)])
        if len(K) != 1:
            raise NetError("center has a non-unique preimage")
        out.append((x, ProjPoint(K[0]), mult))
    return out, other


def trisecant_test(line, net):
    """Membership of a line in the section, cross-checked against polar triangles.

    When the three intersection points with the center surface are rational
    their preimages must form a polar triangle of C_P; a disagreement raises.
    """
    from .polar import Conic, Triangle, is_polar_triangle

    inside = line_in_section(line, SectionSpec(4, list(net)))
    pts, other = trisecant_points(line, net)
    pre = [u for _, u, m in pts for _ in range(m)]
    if not other and len(pre) == 3 and len(set(pre)) >= 2:
        conic = Conic(apolarity_data(veronese_center_map(net)).C_P_matrix)
        if is_polar_triangle(conic, Triangle(*pre)) != inside:
            raise NetError("trisecant and polar-triangle characterizations disagree")
    return inside
