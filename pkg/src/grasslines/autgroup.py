"""Automorphisms of linear sections G(1,N) ∩ H^l.

P(T) preserves the section spanned by A₁, …, A_l iff ᵗT⁻¹AᵢT⁻¹ lies in
span{A₁, …, A_l} for every i. Linearizing at the identity, the Lie algebra is
{X : ᵗX·Aᵢ + Aᵢ·X ∈ span{Aⱼ}}; its dimension minus one (the scalars) is the
dimension of the automorphism group. Explicit generators of the groups for
the normal forms are built and checked element by element.
"""

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import permutations

from .antisym import AntisymMatrix, corank, symplectic
from .core import modular
from .core.matrix import RatMatrix, nullspace, rank, rref
from .grassmann import SectionSpec, line_in_section, lines_through_point
from .nets import (
    NetError,
    _read_g15,
    cubic_smooth,
    dual_cubic,
    g15_family_element,
    g15_family_parameter,
    trisecant_form,
    veronese_center_map,
)
from .pencils import center_curve, curve_coefficient_vectors, even_normal_pencil, pfaffian_binary
from .points import LineRep

__all__ = [
    "AutError",
    "AutReport",
    "GroupElement",
    "infinitesimal_aut_dim",
    "lie_algebra_basis",
    "verify_element",
    "stabilizer_dim",
    "quasihomogeneity_report",
    "symmetric_power_rep",
    "hyperplane_normal_form",
    "recognize_normal_form",
    "build_generators",
    "orbit_census_g14_h1",
    "random_section",
    "general_position",
    "expected_aut_dim",
    "center_pencils_fixing_dim",
    "random_sl2",
    "admissible_permutations",
    "permutation_element",
    "hankel_element",
    "even_pencil_torus_element",
    "check_range",
]


class AutError(ValueError):
    pass


@dataclass(frozen=True)
class AutReport:
    N: int
    l: int
    aut_dim: int
    section_dim: int
    sample_line_stab_dim: int
    orbit_dim: int
    verdict: str
    seed: int
    samples: int

    def to_json(self):
        return asdict(self)


@dataclass(frozen=True)
class GroupElement:
    """T together with the matrix M of ᵗT⁻¹AᵢT⁻¹ = Σⱼ Mᵢⱼ Aⱼ."""

    T: RatMatrix
    induced_span_action: RatMatrix

    def __matmul__(self, other):
        # ᵗ(T₁T₂)⁻¹ Aᵢ (T₁T₂)⁻¹ = Σ (M₂M₁)ᵢₖ Aₖ
        return GroupElement(self.T @ other.T, other.induced_span_action @ self.induced_span_action)

    def inverse(self):
        return GroupElement(self.T.inverse(), self.induced_span_action.inverse())


def check_range(N, l):
    if N < 4 or not 1 <= l <= 2 * N - 5:
        raise AutError(
            f"(N, l) = ({N}, {l}) is outside the range N ≥ 4, 1 ≤ l ≤ 2N−5 in which "
            "automorphisms of the section are induced by PGL(N+1)"
        )


def _system(s):
    """Rows of the linear map (X, μ) ↦ ᵗXAᵢ + AᵢX − Σⱼ μᵢⱼAⱼ on upper entries."""
    n = s.N + 1
    l = s.l
    full = [a.full().rows for a in s.matrices]
    ncols = n * n + l * l
    rows = []
    for i, Ai in enumerate(full):
        for a in range(n):
            for b in range(a + 1, n):
                row = [Fraction(0)] * ncols
                for k in range(n):
                    # (ᵗX A)_ab = Σ_k X_ka A_kb ; (A X)_ab = Σ_k A_ak X_kb
                    if Ai[k][b]:
                        row[k * n + a] += Ai[k][b]
                    if Ai[a][k]:
                        row[k * n + b] += Ai[a][k]
                for j, Aj in enumerate(full):
                    if Aj[a][b]:
                        row[n * n + i * l + j] -= Aj[a][b]
                rows.append(row)
    return rows


def _scalar_solution(s):
    n, l = s.N + 1, s.l
    v = [Fraction(0)] * (n * n + l * l)
    for k in range(n):
        v[k * n + k] = Fraction(1)
    for i in range(l):
        v[n * n + i * l + i] = Fraction(2)
    return tuple(v)


def infinitesimal_aut_dim(s):
    """Dimension of Aut(G(1,N) ∩ H^l) from the kernel of the linearized condition."""
    check_range(s.N, s.l)
    return modular.nullity(_system(s), known=[_scalar_solution(s)]) - 1


def lie_algebra_basis(s):
    """Basis of the infinitesimal automorphisms as (N+1)×(N+1) matrices (scalars included)."""
    n = s.N + 1
    out = []
    for v in modular.nullspace(_system(s)):
        out.append(RatMatrix([[v[k * n + a] for a in range(n)] for k in range(n)]))
    return out


def _span_solver(s):
    vecs = [a.vector() for a in s.matrices]
    _, r, piv = rref([list(v) for v in vecs])
    sub = RatMatrix([[v[p] for v in vecs] for p in piv])  # l×l, invertible
    return vecs, piv, sub.inverse()


def verify_element(T, s):
    """Accept T when it preserves the span of the section matrices."""
    T = T if isinstance(T, RatMatrix) else RatMatrix(T)
    if T.shape != (s.N + 1, s.N + 1):
        raise AutError("T has the wrong size")
    if T.det() == 0:
        raise AutError("T is not invertible")
    vecs, piv, sub_inv = _span_solver(s)
    Tinv = T.inverse()
    M = []
    for i, a in enumerate(s.matrices):
        img = a.congruence(Tinv).vector()
        coeffs = sub_inv @ [img[p] for p in piv]
        residual = [
            x - sum((c * v[k] for c, v in zip(coeffs, vecs)), Fraction(0)) for k, x in enumerate(img)
        ]
        if any(residual):
            nz = {k: str(x) for k, x in enumerate(residual) if x}
            raise AutError(f"not an automorphism: image of A_{i} leaves the span (residual {nz})")
        M.append(list(coeffs))
    return GroupElement(T, RatMatrix(M))


def _annihilator(points):
    return nullspace([list(p) for p in points])


def _stabilizer_rows(s, line):
    n = s.N + 1
    l = s.l
    ncols = n * n + l * l
    rows = []
    p, q = line.p.coords, line.q.coords
    for ell in _annihilator([p, q]):
        for x in (p, q):
            row = [Fraction(0)] * ncols
            # ℓ(X x) = Σ_{k,a} ℓ_k X_ka x_a
            for k in range(n):
                if ell[k]:
                    for a in range(n):
                        if x[a]:
                            row[k * n + a] += ell[k] * x[a]
            rows.append(row)
    return rows


def stabilizer_dim(s, line):
    """Dimension of the stabilizer of a section line inside the automorphism group."""
    check_range(s.N, s.l)
    if not line_in_section(line, s):
        raise AutError("the line does not belong to the section")
    rows = _system(s) + _stabilizer_rows(s, line)
    return modular.nullity(rows, known=[_scalar_solution(s)]) - 1


def _random_section_line(s, rng, bound=20):
    n = s.N + 1
    for _ in range(100):
        p = [rng.randint(-bound, bound) for _ in range(n)]
        if not any(p):
            continue
        K = lines_through_point(p, s)
        coeffs = [rng.randint(-bound, bound) for _ in K]
        q = [sum((c * v[k] for c, v in zip(coeffs, K)), Fraction(0)) for k in range(n)]
        if rank([p, q]) == 2:
            return LineRep(p, q)
    raise AutError("no section line found after 100 attempts")


def quasihomogeneity_report(s, seed=0, samples=3):
    """Orbit dimension of a general section line compared with the section's dimension."""
    aut = infinitesimal_aut_dim(s)
    rng = random.Random(seed)
    stab = None
    for _ in range(max(1, samples)):
        line = _random_section_line(s, rng)
        d = stabilizer_dim(s, line)
        stab = d if stab is None else min(stab, d)
    orbit = aut - stab
    verdict = "quasihomogeneous" if orbit == s.section_dim else "not_quasihomogeneous"
    return AutReport(s.N, s.l, aut, s.section_dim, stab, orbit, verdict, seed, samples)


def symmetric_power_rep(t, size):
    """Action of t = [[a, b], [c, d]] on coefficient vectors of binary forms of degree size−1.

    Row r holds the coefficients of (dμ + cλ)^(size−1−r) (bμ + aλ)^r in the
    basis μ^(size−1−s) λ^s.
    """
    t = t if isinstance(t, RatMatrix) else RatMatrix(t)
    if t.det() == 0:
        raise AutError("t must be invertible")
    a, b, c, d = t[0, 0], t[0, 1], t[1, 0], t[1, 1]
    k = size - 1

    def mul(f, g):
        out = [Fraction(0)] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            if x:
                for j, y in enumerate(g):
                    out[i + j] += x * y
        return out

    rows = []
    for r in range(size):
        f = [Fraction(1)]
        for _ in range(k - r):
            f = mul(f, [d, c])
        for _ in range(r):
            f = mul(f, [b, a])
        rows.append(f)
    return RatMatrix(rows)


def hyperplane_normal_form(N):
    """A = [[0, −E], [E, 0]] on C^(2n), followed by a zero row and column when N is even."""
    n = (N + 1) // 2
    return AntisymMatrix(N + 1, {(i, n + i): -1 for i in range(n)})


def recognize_normal_form(s):
    """Kind and parameters of a section given in one of the normal forms."""
    size = s.N + 1
    if s.l == 1 and s.matrices[0] == hyperplane_normal_form(s.N):
        return "hyperplane", {}
    if s.l == 2 and size % 2 == 0:
        A, B = s.matrices
        n = size // 2
        lambdas = [-B[2 * i, 2 * i + 1] for i in range(n)]
        target = AntisymMatrix(size, {(2 * i, 2 * i + 1): -lam for i, lam in enumerate(lambdas)})
        if A == symplectic(n) and B == target and len(set(lambdas)) == n:
            return "odd-pencil", {"lambdas": tuple(lambdas)}
    if s.l == 2 and size % 2 == 1:
        target = even_normal_pencil((size - 1) // 2)
        if tuple(s.matrices) == (target.A, target.B):
            return "even-pencil", {}
    if s.l == 3 and size == 6:
        from .antisym import AntisymNet

        params = _read_g15(AntisymNet(*s.matrices))
        if params is not None:
            return "net-g15", {"params": params}
    raise AutError("unrecognized normal form")


def random_sl2(rng, bound=5):
    while True:
        a = Fraction(rng.randint(-bound, bound))
        if a == 0:
            continue
        b, c = Fraction(rng.randint(-bound, bound)), Fraction(rng.randint(-bound, bound))
        return RatMatrix([[a, b], [c, (1 + b * c) / a]])


def _random_gl(rng, n, bound=5):
    while True:
        m = RatMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        if m.det() != 0:
            return m


def _random_symmetric(rng, n, bound=5):
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m[i][j] = m[j][i] = Fraction(rng.randint(-bound, bound))
    return RatMatrix(m)


def _mobius_through(xs, ys):
    """(a, b, c, d) with (a x + b)/(c x + d) = y for three pairs, or None."""
    rows = [[x, Fraction(1), -x * y, -y] for x, y in zip(xs, ys)]
    K = nullspace(rows)
    if len(K) != 1:
        return None
    a, b, c, d = K[0]
    if a * d - b * c == 0:
        return None
    return a, b, c, d


def admissible_permutations(lambdas):
    """Permutations σ of the roots realized by a Möbius map, with that map."""
    lambdas = [Fraction(x) for x in lambdas]
    n = len(lambdas)
    out = []
    if n < 3:
        for sigma in permutations(range(n)):
            if n == 2 and sigma == (1, 0):
                s = lambdas[0] + lambdas[1]
                out.append((sigma, (Fraction(-1), s, Fraction(0), Fraction(1))))
            else:
                out.append((sigma, (Fraction(1), Fraction(0), Fraction(0), Fraction(1))))
        return out
    for first in permutations(range(n), 3):
        psi = _mobius_through(lambdas[:3], [lambdas[i] for i in first])
        if psi is None:
            continue
        a, b, c, d = psi
        images = []
        for x in lambdas:
            den = c * x + d
            if den == 0:
                break
            y = (a * x + b) / den
            if y not in lambdas:
                break
            images.append(lambdas.index(y))
        else:
            if sorted(images) == list(range(n)):
                out.append((tuple(images), psi))
    return out


def permutation_element(lambdas, sigma, psi):
    """Block permutation P_σ for the odd-pencil normal form, rescaled by ψ."""
    a, b, c, d = psi
    n = len(lambdas)
    cols = [None] * (2 * n)
    for i in range(n):
        si = d + c * Fraction(lambdas[i])
        e0 = [Fraction(0)] * (2 * n)
        e1 = [Fraction(0)] * (2 * n)
        e0[2 * sigma[i]] = si
        e1[2 * sigma[i] + 1] = Fraction(1)
        cols[2 * i], cols[2 * i + 1] = e0, e1
    # the congruence matrix P has these columns; the point map is P⁻¹
    return RatMatrix.from_columns(cols).inverse()


def hankel_element(n, params, alpha=1):
    """[[αE_n, 0], [S, E_(n+1)]] with S_ij = params[i + j]."""
    params = [Fraction(x) for x in params]
    if len(params) != 2 * n:
        raise AutError(f"a Hankel block needs {2 * n} parameters")
    size = 2 * n + 1
    m = [[Fraction(0)] * size for _ in range(size)]
    for i in range(n):
        m[i][i] = Fraction(alpha)
    for i in range(n + 1):
        m[n + i][n + i] = Fraction(1)
        for j in range(n):
            m[n + i][j] = params[i + j]
    return RatMatrix(m)


def even_pencil_torus_element(t, n):
    """diag(ᵗt_n⁻¹, t_(n+1)) built from symmetric powers of t ∈ GL(2)."""
    tn = symmetric_power_rep(t, n)
    return RatMatrix.block_diag([tn.T.inverse(), symmetric_power_rep(t, n + 1)])


def build_generators(s, seed=0, count=3):
    """Verified group elements of a section in normal form."""
    kind, params = recognize_normal_form(s)
    rng = random.Random(seed)
    size = s.N + 1
    Ts = []
    if kind == "odd-pencil":
        lambdas = params["lambdas"]
        n = len(lambdas)
        for _ in range(count):
            Ts.append(RatMatrix.block_diag([random_sl2(rng) for _ in range(n)]))
        for sigma, psi in admissible_permutations(lambdas):
            if sigma != tuple(range(n)):
                Ts.append(permutation_element(lambdas, sigma, psi))
    elif kind == "even-pencil":
        n = (size - 1) // 2
        for _ in range(count):
            Ts.append(hankel_element(n, [rng.randint(-5, 5) for _ in range(2 * n)]))
            Ts.append(hankel_element(n, [0] * (2 * n), rng.choice([-3, -2, 2, 3])))
            Ts.append(even_pencil_torus_element(_random_gl(rng, 2), n))
    elif kind == "hyperplane":
        n = size // 2
        for _ in range(count):
            S = _random_symmetric(rng, n)
            E = RatMatrix.identity(n)
            Z = RatMatrix.zeros(n, n)
            g = _random_gl(rng, n)
            scale = Fraction(rng.choice([x for x in range(-5, 6) if x]))
            blocks = [
                E.hstack(S).vstack(Z.hstack(E)),
                E.hstack(Z).vstack(S.hstack(E)),
                g.hstack(Z).vstack(Z.hstack(g.T.inverse())),
                E.hstack(Z).vstack(Z.hstack(E.scale(scale))),
            ]
            for Tbar in blocks:
                if size % 2:
                    row = [Fraction(rng.randint(-5, 5)) for _ in range(2 * n)]
                    last = Fraction(rng.choice([x for x in range(-5, 6) if x]))
                    Tbar = Tbar.hstack(RatMatrix.zeros(2 * n, 1)).vstack(RatMatrix([row + [last]]))
                Ts.append(Tbar)
    elif kind == "net-g15":
        alpha, beta, gamma, delta = params["params"]
        if delta == 0:
            raise AutError("the one-parameter family needs δ ≠ 0")
        for _ in range(count):
            while True:
                slope = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                try:
                    a, d = g15_family_parameter(gamma, delta, slope)
                    break
                except ValueError:
                    continue
            t = g15_family_element(gamma, delta, a, d)
            Ts.append(RatMatrix.block_diag([t, t.T.inverse(), t]))
    return [verify_element(T, s) for T in Ts]


def center_pencils_fixing_dim(s):
    """Infinitesimal automorphisms acting trivially on the lines through c_(0:1) and c_(1:0).

    An X acting as the identity on the section lines through a center c
    satisfies X·q ≡ σ_c q modulo c for every q in the center hyperplane H_c.
    The returned dimension excludes the scalars.
    """
    from .grassmann import center_hyperplane

    pencil = s.pencil()
    if pencil.size % 2 == 0:
        raise AutError("centers exist only for pencils of odd size")
    n = pencil.size
    base = _system(s)
    extra = 2
    width = len(base[0]) + extra
    rows = [r + [Fraction(0)] * extra for r in base]
    curve = center_curve(pencil)
    for slot, at in enumerate(((0, 1), (1, 0))):
        c = tuple(comp.evaluate(at) for comp in curve)
        h = center_hyperplane(pencil, at)
        H = nullspace([list(h)])
        for ell in _annihilator([c]):
            for q in H:
                row = [Fraction(0)] * width
                for k in range(n):
                    if ell[k]:
                        for a in range(n):
                            if q[a]:
                                row[k * n + a] += ell[k] * q[a]
                row[len(base[0]) + slot] = -sum((e * x for e, x in zip(ell, q)), Fraction(0))
                rows.append(row)
    return modular.nullity(rows) - 1


def orbit_census_g14_h1(s, lines):
    """Orbit label of each line of a section of G(1,4) by one, two or three hyperplanes."""
    if s.N != 4 or s.l not in (1, 2, 3):
        raise AutError("unrecognized kind: the census covers G(1,4) ∩ H^l for l = 1, 2, 3")
    labels = []
    for line in lines:
        if not line_in_section(line, s):
            raise AutError(f"line {line!r} does not belong to the section")
        labels.append(_census_label(s, line))
    return labels


def _in_span(vectors, x):
    return rank([list(v) for v in vectors]) == rank([list(v) for v in vectors] + [list(x)])


def _census_label(s, line):
    p, q = line.p.coords, line.q.coords
    if s.l == 1:
        K = s.matrices[0].kernel()
        if len(K) != 1:
            raise AutError("the hyperplane is not general")
        return "through-center" if _in_span([p, q], K[0]) else "not-through-center"
    if s.l == 2:
        curve = center_curve(s.pencil())
        V = curve_coefficient_vectors(curve, 2)
        if rank([list(v) for v in V]) != 3:
            raise AutError("the pencil is not general")
        # intersection of the line with the plane P = span(V)
        K = nullspace([list(x) for x in zip(*(list(V) + [p, q]))])
        meet = len(K)
        if meet == 0:
            return "disjoint"
        if meet == 2:
            # the line lies in the plane: restrict the conic y₁² = y₀y₂ to it
            a, b = K
            pts = [tuple(-x for x in v[:3]) for v in (a, b)]
            # conic on s·pts[0] + t·pts[1] is a binary quadratic
            y0, y1 = pts
            A2 = y0[1] ** 2 - y0[0] * y0[2]
            B2 = 2 * y0[1] * y1[1] - y0[0] * y1[2] - y1[0] * y0[2]
            C2 = y1[1] ** 2 - y1[0] * y1[2]
            return "tangent" if B2 * B2 - 4 * A2 * C2 == 0 else "secant"
        y = tuple(-x for x in K[0][:3])
        if y[1] ** 2 == y[0] * y[2]:
            return "through-conic"
        raise AutError("a section line meets the center plane off the conic")
    import sympy

    f = trisecant_form(line, _net(s))
    st = sympy.symbols("s t")
    _, factors = sympy.sqf_list(f.to_sympy(st))
    mults = sorted((int(m) for g, m in factors if sympy.Poly(g, *st).total_degree() > 0), reverse=True)
    if f.degree != 3:
        raise AutError(f"the line meets the center surface in {f.degree} points")
    if mults[0] == 1:
        return "three-points"
    if mults[0] == 2:
        return "tangent"
    return "triple-point"


def _net(s):
    from .antisym import AntisymNet

    return AntisymNet(*s.matrices)


def expected_aut_dim(N, l):
    """Dimensions of the automorphism groups of general sections."""
    if l == 1:
        return (N * N + 3 * N + 2) // 2
    if l == 2:
        return N + 4 if N % 2 == 0 else 3 * (N + 1) // 2
    if (N, l) == (4, 3):
        return 3
    if (N, l) == (5, 3):
        return 1
    return 0


def _random_antisym(rng, size, bound):
    return AntisymMatrix(
        size, {(i, j): rng.randint(-bound, bound) for i in range(size) for j in range(i + 1, size)}
    )


def general_position(s):
    """Certify the open conditions that make a section general."""
    size = s.N + 1
    minimal = size % 2
    if s.l == 1:
        return corank(s.matrices[0]) == minimal
    if s.l == 2:
        pencil = s.pencil()
        if size % 2 == 0:
            import sympy

            f = pfaffian_binary(pencil)
            if f.is_zero() or f.degree != size // 2:
                return False
            lam, mu = sympy.symbols("lam mu")
            g = f.to_sympy((lam, mu))
            h = sympy.gcd(sympy.diff(g, lam), sympy.diff(g, mu))
            return sympy.Poly(h, lam, mu).total_degree() == 0
        n = (size - 1) // 2
        curve = center_curve(pencil)
        return rank([list(v) for v in curve_coefficient_vectors(curve, n)]) == n + 1
    mats = s.matrices
    members = list(mats) + [sum(mats[1:], mats[0])]
    if any(corank(m) != minimal for m in members):
        return False
    if (s.N, s.l) == (4, 3):
        try:
            veronese_center_map(_net(s))
        except NetError:
            return False
    if (s.N, s.l) == (5, 3):
        return cubic_smooth(dual_cubic(_net(s)))
    return True


def random_section(N, l, rng, bound=20, attempts=100):
    """A seeded section with integer entries in [−bound, bound], certified general."""
    if isinstance(rng, int):
        rng = random.Random(rng)
    for _ in range(attempts):
        mats = [_random_antisym(rng, N + 1, bound) for _ in range(l)]
        try:
            s = SectionSpec(N, mats)
        except ValueError:
            continue
        if general_position(s):
            return s
    raise AutError(f"no general section found for (N, l) = ({N}, {l}) after {attempts} attempts")
