import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import antisym_matrices, random_antisym, random_matrix
from grasslines.antisym import (
    AntisymMatrix,
    corank,
    dual_grassmannian_member,
    pfaffian,
    pfaffian_minor,
    symplectic,
    tangency,
)
from grasslines.core.matrix import rank
from grasslines.points import LineRep


def _matchings(idx):
    if not idx:
        yield []
        return
    a = idx[0]
    for k in range(1, len(idx)):
        rest = idx[1:k] + idx[k + 1 :]
        for m in _matchings(rest):
            yield [(a, idx[k])] + m


def _sign(perm):
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def pf_oracle(a):
    """Definition sum over perfect matchings: Σ sgn(π) Π a_{π(2k−1)π(2k)}."""
    full = a.full()
    total = Fraction(0)
    for m in _matchings(list(range(a.size))):
        perm = [x for pair in m for x in pair]
        term = Fraction(_sign(perm))
        for i, j in m:
            term *= full[i, j]
        total += term
    return total


def test_sign_convention():
    assert pfaffian(AntisymMatrix(2, {(0, 1): 5})) == 5
    assert pfaffian(symplectic(3)) == -1


def test_odd_size_is_zero():
    assert pfaffian(random_antisym(random.Random(0), 5)) == 0


@pytest.mark.parametrize("size", [2, 4, 6])
def test_matches_definition_sum(size):
    rng = random.Random(size)
    for _ in range(20):
        a = random_antisym(rng, size)
        assert pfaffian(a) == pf_oracle(a)


@pytest.mark.parametrize("size", [2, 4, 6, 8, 10])
def test_square_is_determinant(size):
    rng = random.Random(100 + size)
    for _ in range(100 if size <= 6 else 25):
        a = random_antisym(rng, size)
        assert pfaffian(a) ** 2 == a.full().det()


@given(st.integers(0, 10_000), st.sampled_from([2, 4, 6]))
def test_congruence_scales_by_det(seed, size):
    rng = random.Random(seed)
    a = random_antisym(rng, size)
    T = random_matrix(rng, size, size, 4)
    assert pfaffian(a.congruence(T)) == T.det() * pfaffian(a)


@given(antisym_matrices(sizes=(2, 3, 4, 5, 6, 7)))
def test_corank_parity(a):
    assert corank(a) % 2 == a.size % 2
    assert a.rank() % 2 == 0


@given(st.integers(0, 10_000), st.sampled_from([3, 5, 7]))
def test_minor_vector_is_kernel(seed, size):
    rng = random.Random(seed)
    a = random_antisym(rng, size)
    c = [pfaffian_minor(a, i) for i in range(size)]
    assert all(x == 0 for x in a.full() @ c)
    if corank(a) == 1:
        assert any(c)


def test_tangent_space_span():
    # e0∧e1, e0∧ei, e1∧ei span a space of dimension 2N−1
    for N in range(3, 9):
        n = N + 1
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        vecs = [(0, 1)] + [(0, i) for i in range(2, n)] + [(1, i) for i in range(2, n)]
        rows = [[int(p == v) for p in pairs] for v in vecs]
        assert rank(rows) == 2 * N - 1


def test_dual_grassmannian_and_tangency():
    A = AntisymMatrix(5, {(2, 3): 1})
    assert dual_grassmannian_member(A)
    line = LineRep([1, 0, 0, 0, 0], [0, 1, 0, 0, 0])
    assert tangency(A, line)
    assert not tangency(AntisymMatrix(5, {(0, 2): 1, (1, 3): 1}), line)
    assert not dual_grassmannian_member(AntisymMatrix(4, {(0, 1): 1, (2, 3): 1}))


def test_json_round_trip():
    a = AntisymMatrix(4, {(0, 1): Fraction(1, 3), (2, 3): -2})
    obj = a.to_json()
    assert obj["size"] == 4
    assert AntisymMatrix.from_json(obj) == a


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        AntisymMatrix(3, {(1, 1): 1})
    with pytest.raises(ValueError):
        AntisymMatrix.from_matrix([[0, 1], [1, 0]])
