import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import combine as _combine
from grasslines.antisym import AntisymPencil
from grasslines.autgroup import hankel_element
from grasslines.core.matrix import RatMatrix
from grasslines.core.poly import poly_matrix_kernel_check
from grasslines.antisym import pencil_matrix
from grasslines.grassmann import SectionSpec, line_in_section, lines_through_point
from grasslines.instances import generate
from grasslines.pencils import (
    PencilError,
    binary_roots,
    center_curve,
    donagi_normal_form,
    donagi_pencil,
    even_normal_pencil,
    even_pencil_normal_form,
    pfaffian_binary,
    symmetric_correction,
)
from grasslines.points import LineRep


def _cross_ratio(a, b, c, d):
    return (a - c) * (b - d) / ((a - d) * (b - c))


def _moebius_roots(pencil):
    roots, _ = binary_roots(pfaffian_binary(pencil))
    return [r for r, _ in roots]


class TestDonagi:
    @pytest.mark.parametrize("lambdas", [(2, 3), (-1, 4, 9), (1, 2, 5, 11), (-3, 0, 2, 7, 8)])
    def test_round_trip(self, lambdas):
        s, truth = generate("odd-pencil", lambdas, seed=len(lambdas))
        nf = donagi_normal_form(s.pencil())
        assert nf.lambdas == tuple(sorted(Fraction(x) for x in lambdas))
        out = s.pencil().transform(nf.T)
        target = donagi_pencil(nf.lambdas)
        assert out.A == target.A and out.B == target.B

    @given(st.integers(0, 10_000))
    def test_cross_ratios_survive_recombination(self, seed):
        rng = random.Random(seed)
        lambdas = rng.sample(range(-20, 20), 4)
        s, _ = generate("odd-pencil", lambdas, seed=seed)
        while True:
            M = [[rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]
            if RatMatrix(M).det() != 0:
                break
        mixed = s.recombine(M).pencil()
        before = sorted(Fraction(x) for x in lambdas)
        roots = _moebius_roots(mixed)
        if any(mu == 0 for _, mu in roots):
            return
        after = [lam / mu for lam, mu in roots]
        ratios_before = {_cross_ratio(*q) for q in _orderings(before)}
        assert _cross_ratio(*after) in ratios_before

    def test_singular_first_member_is_shifted(self):
        p = donagi_pencil([0, 1, 2])
        nf = donagi_normal_form(AntisymPencil(p.B, p.A))
        assert nf.shift != 0

    def test_repeated_root_rejected(self):
        with pytest.raises(PencilError):
            donagi_normal_form(donagi_pencil([1, 1, 2]))


def _orderings(xs):
    from itertools import permutations

    return permutations(xs)


class TestEvenNormalForm:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_round_trip(self, n):
        s, _ = generate("even-pencil", [n], seed=10 + n)
        nf = even_pencil_normal_form(s.pencil())
        out = s.pencil().transform(nf.T)
        target = even_normal_pencil(n)
        assert out.A == target.A and out.B == target.B

    def test_idempotent(self):
        p = even_normal_pencil(3)
        assert even_pencil_normal_form(p).T == RatMatrix.identity(7)

    @given(st.lists(st.integers(-9, 9), min_size=6, max_size=6))
    def test_unipotent_block_fixes_A(self, params):
        p = even_normal_pencil(3)
        assert p.A.transform(hankel_element(3, params)) == p.A

    @given(st.integers(0, 10_000))
    def test_symmetric_correction(self, seed):
        rng = random.Random(seed)
        n = rng.randint(1, 5)
        b = [[Fraction(0)] * n for _ in range(n)]
        for i, j in combinations(range(n), 2):
            b[i][j] = Fraction(rng.randint(-9, 9))
            b[j][i] = -b[i][j]
        t = symmetric_correction(b)
        get = lambda i, j: t[i][j] if i < n and j < n else 0
        for i in range(n):
            for j in range(n):
                assert t[i][j] == t[j][i]
                assert get(i + 1, j) - get(i, j + 1) == b[i][j]

    def test_membership_preserved(self):
        s, _ = generate("even-pencil", [2], seed=2)
        nf = even_pencil_normal_form(s.pencil())
        out = SectionSpec(4, [m.transform(nf.T) for m in s.matrices])
        rng = random.Random(2)
        for _ in range(10):
            p = [rng.randint(-5, 5) for _ in range(5)]
            K = lines_through_point(p, s)
            q = _combine(K, [rng.randint(-3, 3) for _ in K])
            r = [rng.randint(-5, 5) for _ in range(5)]
            for line in (LineRep(p, q), LineRep(p, r)):
                image = LineRep(nf.T @ line.p.coords, nf.T @ line.q.coords)
                assert line_in_section(line, s) == line_in_section(image, out)

    def test_degenerate_pencil_rejected(self):
        p = even_normal_pencil(2)
        with pytest.raises(PencilError):
            even_pencil_normal_form(AntisymPencil(p.A, p.A.scale(2) + p.B.scale(0) + _rank_two(5)))


def _rank_two(size):
    from grasslines.antisym import AntisymMatrix

    return AntisymMatrix(size, {(0, 1): 1})


class TestCenterCurve:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_kernel_identity(self, n):
        for seed in range(5):
            s, _ = generate("even-pencil", [n], seed=seed)
            p = s.pencil()
            curve = center_curve(p)
            assert all(c.degree == n for c in curve if not c.is_zero())
            assert poly_matrix_kernel_check(pencil_matrix(p.A, p.B), list(curve))

    def test_normal_form_curve(self):
        # up to sign the components are the monomials μ^n, …, λ^n in the upper block
        n = 2
        p = even_normal_pencil(n)
        curve = center_curve(p)
        assert all(c.is_zero() for c in curve[:n])
        for k, c in enumerate(curve[n:]):
            assert len(c.coeffs) == 1
