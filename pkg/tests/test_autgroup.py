import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_invertible
from grasslines.antisym import AntisymMatrix
from grasslines.autgroup import (
    AutError,
    admissible_permutations,
    build_generators,
    center_pencils_fixing_dim,
    check_range,
    even_pencil_torus_element,
    expected_aut_dim,
    general_position,
    hankel_element,
    hyperplane_normal_form,
    infinitesimal_aut_dim,
    lie_algebra_basis,
    orbit_census_g14_h1,
    permutation_element,
    quasihomogeneity_report,
    random_section,
    recognize_normal_form,
    stabilizer_dim,
    symmetric_power_rep,
    verify_element,
)
from grasslines.core.matrix import RatMatrix
from grasslines.grassmann import SectionSpec, lines_through_point
from grasslines.instances import normal_section
from grasslines.pencils import donagi_pencil, even_normal_pencil
from grasslines.points import LineRep

SMALL_CELLS = [(4, 1), (4, 2), (4, 3), (5, 1), (5, 2), (5, 3), (6, 3), (5, 4)]


def _random_gl(rng, n, bound=4):
    return random_invertible(rng, n, bound)


@pytest.mark.parametrize("N,l", SMALL_CELLS)
def test_small_cells(N, l):
    s = random_section(N, l, random.Random(f"{N}-{l}"))
    assert infinitesimal_aut_dim(s) == expected_aut_dim(N, l)


@given(st.integers(0, 10_000), st.sampled_from([(4, 2), (4, 3), (5, 2), (5, 3)]))
def test_aut_dim_invariant_under_coordinates(seed, cell):
    N, l = cell
    rng = random.Random(seed)
    s = random_section(N, l, rng, bound=6)
    base = infinitesimal_aut_dim(s)
    T = _random_gl(rng, N + 1, 3)
    M = _random_gl(rng, l, 3).rows
    assert infinitesimal_aut_dim(s.transform(T)) == base
    assert infinitesimal_aut_dim(s.recombine(M)) == base


def test_scalars_in_algebra():
    s = random_section(5, 2, 3)
    basis = lie_algebra_basis(s)
    assert len(basis) == infinitesimal_aut_dim(s) + 1
    # the identity lies in the span of the basis
    flat = [[x for r in b.rows for x in r] for b in basis]
    ident = [x for r in RatMatrix.identity(6).rows for x in r]
    from grasslines.core.matrix import rank

    assert rank(flat + [ident]) == rank(flat)


def test_range_checks():
    with pytest.raises(AutError):
        check_range(3, 1)
    with pytest.raises(AutError):
        check_range(5, 6)
    check_range(5, 5)


class TestVerifyElement:
    def setup_method(self):
        self.s = normal_section({"kind": "even-pencil", "n": 2})

    def test_closed_under_product_and_inverse(self):
        rng = random.Random(1)
        gens = build_generators(self.s, seed=1)
        for _ in range(10):
            g, h = rng.choice(gens), rng.choice(gens)
            prod = verify_element((g @ h).T, self.s)
            assert prod.induced_span_action == (g @ h).induced_span_action
            inv = verify_element(g.inverse().T, self.s)
            assert inv.induced_span_action == g.inverse().induced_span_action

    def test_rejects_non_automorphism(self):
        T = RatMatrix.identity(5)
        T = T + RatMatrix([[int(i == 0 and j == 1) for j in range(5)] for i in range(5)])
        with pytest.raises(AutError, match="residual"):
            verify_element(T, self.s)

    def test_rejects_singular(self):
        with pytest.raises(AutError):
            verify_element(RatMatrix.zeros(5, 5), self.s)


class TestGenerators:
    @pytest.mark.parametrize(
        "truth",
        [
            {"kind": "odd-pencil", "lambdas": ["1", "2", "4"]},
            {"kind": "odd-pencil", "lambdas": ["0", "1", "-1", "2", "1/2"]},
            {"kind": "even-pencil", "n": 3},
            {"kind": "hyperplane", "N": 5},
            {"kind": "hyperplane", "N": 6},
            {"kind": "net-g15", "params": ["1", "1", "2", "3"]},
        ],
    )
    def test_all_verify(self, truth):
        s = normal_section(truth)
        gens = build_generators(s, seed=7)
        assert gens and all(g.T.det() != 0 for g in gens)

    def test_permutations_act_on_roots(self):
        lam = [Fraction(1), Fraction(2), Fraction(4)]
        p = donagi_pencil(lam)
        s = SectionSpec(5, [p.A, p.B])
        perms = admissible_permutations(lam)
        assert len(perms) == 6
        for sigma, psi in perms:
            a, b, c, d = psi
            assert [(a * x + b) / (c * x + d) for x in lam] == [lam[sigma[i]] for i in range(3)]
            # the congruence P_σ maps the member with root λᵢ to the one with root λ_σ(i)
            M = verify_element(permutation_element(lam, sigma, psi), s).inverse().induced_span_action
            images = [(x * M[0, 0] - M[1, 0]) / (M[1, 1] - x * M[0, 1]) for x in lam]
            assert images == [lam[sigma[i]] for i in range(3)]

    def test_klein_four_for_four_roots(self):
        perms = admissible_permutations([0, 1, -1, 2])
        assert len(perms) == 4

    def test_generic_roots_only_identity(self):
        assert [s for s, _ in admissible_permutations([0, 1, 3, 7, 20])] == [(0, 1, 2, 3, 4)]

    @given(st.integers(0, 10_000))
    def test_hankel_subgroup_is_normal(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 3)
        s = normal_section({"kind": "even-pencil", "n": n})
        H = hankel_element(n, [rng.randint(-5, 5) for _ in range(2 * n)])
        D = even_pencil_torus_element(_random_gl(rng, 2), n)
        C = D @ H @ D.inverse()
        verify_element(C, s)
        size = 2 * n + 1
        assert all(C[i, j] == int(i == j) for i in range(size) for j in range(size) if not (i >= n and j < n))
        S = [[C[n + i, j] for j in range(n)] for i in range(n + 1)]
        assert all(S[i][j] == S[i + 1][j - 1] for i in range(n) for j in range(1, n))

    @given(st.integers(0, 10_000))
    def test_torus_relation(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 4)
        t = _random_gl(rng, 2)
        a, b, c, d = t[0, 0], t[0, 1], t[1, 0], t[1, 1]
        p = even_normal_pencil(n)
        T = even_pencil_torus_element(t, n)
        assert p.A.congruence(T) == p.A.scale(d) + p.B.scale(c)
        assert p.B.congruence(T) == p.A.scale(b) + p.B.scale(a)

    @given(st.integers(0, 10_000))
    def test_symmetric_power_is_multiplicative(self, seed):
        rng = random.Random(seed)
        t1, t2 = _random_gl(rng, 2), _random_gl(rng, 2)
        for k in (1, 2, 3, 4):
            assert symmetric_power_rep(t1 @ t2, k) == symmetric_power_rep(t1, k) @ symmetric_power_rep(t2, k)

    def test_recognize(self):
        assert recognize_normal_form(normal_section({"kind": "hyperplane", "N": 4}))[0] == "hyperplane"
        with pytest.raises(AutError):
            recognize_normal_form(random_section(4, 2, 0))


@pytest.mark.parametrize("n", [2, 3])
def test_center_pencils_determine_element(n):
    s = normal_section({"kind": "even-pencil", "n": n})
    assert center_pencils_fixing_dim(s) == 0


def test_stabilizer_bounded_by_aut():
    rng = random.Random(5)
    for N, l in [(4, 1), (5, 2), (6, 2)]:
        s = random_section(N, l, rng)
        rep = quasihomogeneity_report(s, seed=1, samples=1)
        assert rep.sample_line_stab_dim <= rep.aut_dim
        assert rep.orbit_dim == rep.aut_dim - rep.sample_line_stab_dim <= rep.section_dim
        assert (rep.verdict == "quasihomogeneous") == (rep.orbit_dim == rep.section_dim)


def test_stabilizer_rejects_foreign_line():
    s = random_section(4, 2, 1)
    with pytest.raises(AutError):
        stabilizer_dim(s, LineRep([1, 0, 0, 0, 0], [0, 1, 0, 0, 0]))


class TestCensus:
    def test_hyperplane(self):
        s = normal_section({"kind": "hyperplane", "N": 4})
        c = s.matrices[0].kernel()[0]
        rng = random.Random(0)
        q = [rng.randint(-3, 3) for _ in range(5)]
        through = LineRep(c, q)
        p = [1, 0, 0, 0, 0]
        other = LineRep(p, lines_through_point(p, s)[1])
        labels = orbit_census_g14_h1(s, [through, other])
        assert labels[0] == "through-center"
        assert labels[1] in ("through-center", "not-through-center")

    def test_pencil_labels_are_known(self):
        s = random_section(4, 2, 2, bound=5)
        rng = random.Random(2)
        lines = []
        while len(lines) < 8:
            p = [rng.randint(-4, 4) for _ in range(5)]
            K = lines_through_point(p, s)
            if K:
                q = K[rng.randrange(len(K))]
                try:
                    lines.append(LineRep(p, q))
                except ValueError:
                    pass
        labels = orbit_census_g14_h1(s, lines)
        assert set(labels) <= {"tangent", "secant", "through-conic", "disjoint"}

    def test_wrong_kind(self):
        with pytest.raises(AutError):
            orbit_census_g14_h1(random_section(5, 2, 0), [])


def test_random_section_is_deterministic_and_general():
    a = random_section(6, 3, 42)
    b = random_section(6, 3, 42)
    assert a == b and general_position(a)


def test_general_position_detects_degenerate():
    A = AntisymMatrix(5, {(0, 1): 1})
    B = AntisymMatrix(5, {(2, 3): 1})
    assert not general_position(SectionSpec(4, [A, B]))
    assert not general_position(SectionSpec(4, [A]))
    assert general_position(SectionSpec(4, [hyperplane_normal_form(4)]))
