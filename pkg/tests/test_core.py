import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rat_matrices, rationals
from grasslines.core import _kernels_fallback, kernels, modular
from grasslines.core.matrix import RatMatrix, nullspace, rank, rref, solve
from grasslines.core.poly import HomogPoly, monomials, random_poly
from grasslines.core.rational import format_rational, parse_rational, to_rational


class TestRational:
    def test_round_trip(self):
        for x in (Fraction(0), Fraction(-3), Fraction(7, 12), Fraction(-5, 3)):
            assert parse_rational(format_rational(x)) == x

    def test_text_forms(self):
        assert format_rational(Fraction(4, 2)) == "2"
        assert format_rational(Fraction(-1, 3)) == "-1/3"
        assert to_rational("6/-4") == Fraction(-3, 2)

    def test_zero_denominator(self):
        with pytest.raises(ValueError):
            parse_rational("1/0")

    def test_floats_refused(self):
        with pytest.raises(TypeError):
            to_rational(0.5)

    @given(rationals)
    def test_lowest_terms(self, x):
        y = to_rational(format_rational(x))
        assert y.denominator > 0 and y == x


class TestMatrix:
    @given(rat_matrices())
    def test_rref_idempotent(self, m):
        red, r, piv = rref(m)
        assert rref(red)[0] == red
        assert len(piv) == r

    @given(rat_matrices())
    def test_rank_transpose(self, m):
        assert rank(m) == rank(m.T)

    @given(rat_matrices())
    def test_nullspace_vectors_vanish(self, m):
        K = nullspace(m)
        assert len(K) == m.ncols - rank(m)
        for v in K:
            assert all(x == 0 for x in m @ v)

    def test_canonical_nullspace(self):
        m = RatMatrix([[1, 2, 0, 3], [0, 0, 1, 4]])
        assert nullspace(m) == [(-2, 1, 0, 0), (-3, 0, -4, 1)]

    def test_inverse_and_det(self):
        m = RatMatrix([[2, 1], [5, 3]])
        assert m.det() == 1
        assert m @ m.inverse() == RatMatrix.identity(2)

    def test_solve(self):
        m = RatMatrix([[1, 1], [1, -1]])
        assert solve(m, [3, 1]) == (2, 1)
        assert solve(RatMatrix([[1, 1], [2, 2]]), [1, 3]) is None


class TestPoly:
    def test_monomial_count(self):
        assert len(monomials(3, 3)) == 10
        assert len(monomials(2, 4)) == 5

    def test_zero_representation(self):
        p = HomogPoly(2, 3, {(3, 0): 1})
        z = p - p
        assert z.is_zero() and z.degree == 0 and z == HomogPoly.zero(2)

    def test_degree_check(self):
        with pytest.raises(ValueError):
            HomogPoly(2, 3, {(1, 1): 1})

    @given(st.integers(0, 10_000), st.integers(1, 3))
    def test_arithmetic_is_exact(self, seed, degree):
        rng = random.Random(seed)
        p = random_poly(rng, 3, degree)
        q = random_poly(rng, 3, degree)
        r = random_poly(rng, 3, 2)
        for _ in range(10):
            x = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)]
            assert (p + q)(*x) == p(*x) + q(*x)
            assert (p * r)(*x) == p(*x) * r(*x)

    def test_derivative(self):
        x, y, z = (HomogPoly.var(3, i) for i in range(3))
        f = x * x * y + z ** 3
        assert f.derivative(0) == (x * y) * 2
        assert f.derivative(2) == (z * z) * 3

    def test_json_round_trip(self):
        rng = random.Random(3)
        p = random_poly(rng, 3, 3)
        assert HomogPoly.from_json(p.to_json()) == p


class TestModular:
    @given(st.integers(0, 10_000))
    def test_matches_exact_nullspace(self, seed):
        rng = random.Random(seed)
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 9)
        rows = [[Fraction(rng.randint(-30, 30), rng.randint(1, 4)) for _ in range(ncols)] for _ in range(nrows)]
        # force some dependence
        if nrows > 2:
            rows[-1] = [a + 3 * b for a, b in zip(rows[0], rows[1])]
        assert modular.nullspace(rows) == nullspace(rows)

    def test_large_entries(self):
        rng = random.Random(1)
        big = 10 ** 40
        rows = [[rng.randint(-big, big) for _ in range(6)] for _ in range(4)]
        assert modular.nullspace(rows) == nullspace(rows)

    def test_nullity_with_known_vector(self):
        rows = [[1, -1, 0], [0, 1, -1]]
        assert modular.nullity(rows, known=[(1, 1, 1)]) == 1

    def test_rank(self):
        assert modular.rank([[1, 2], [2, 4]]) == 1


class TestKernels:
    def test_backend_reported(self):
        assert kernels.BACKEND in ("cython", "numpy")

    @pytest.mark.parametrize("shape", [(5, 7), (12, 9), (20, 20)])
    def test_backends_agree(self, shape):
        p = modular.PRIMES[0]
        rng = np.random.default_rng(sum(shape))
        a = rng.integers(0, p, size=shape, dtype=np.int64)
        a[-1] = (a[0] + 2 * a[1]) % p
        b, c = a.copy(), a.copy()
        assert list(_kernels_fallback.rref_mod_p(b, p)) == list(kernels.rref_mod_p(c, p))
        assert np.array_equal(b, c)
