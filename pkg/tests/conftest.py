import random
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from grasslines.antisym import AntisymMatrix
from grasslines.core.matrix import RatMatrix

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

small_ints = st.integers(min_value=-9, max_value=9)
rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


def random_antisym(rng, size, bound=9):
    return AntisymMatrix(
        size, {(i, j): rng.randint(-bound, bound) for i in range(size) for j in range(i + 1, size)}
    )


def random_matrix(rng, nrows, ncols, bound=9):
    return RatMatrix([[rng.randint(-bound, bound) for _ in range(ncols)] for _ in range(nrows)])


def random_invertible(rng, n, bound=3):
    while True:
        m = random_matrix(rng, n, n, bound)
        if m.det() != 0:
            return m


@st.composite
def antisym_matrices(draw, sizes=(2, 3, 4, 5, 6)):
    size = draw(st.sampled_from(sizes))
    entries = draw(st.lists(small_ints, min_size=size * (size - 1) // 2, max_size=size * (size - 1) // 2))
    pairs = [(i, j) for i in range(size) for j in range(i + 1, size)]
    return AntisymMatrix(size, dict(zip(pairs, entries)))


@st.composite
def rat_matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return RatMatrix([[draw(rationals) for _ in range(c)] for _ in range(r)])


def combine(vectors, coeffs):
    """Σ cᵢ vᵢ with exact arithmetic."""
    return [sum((Fraction(c) * v[k] for c, v in zip(coeffs, vectors)), Fraction(0)) for k in range(len(vectors[0]))]


def seeded(seed):
    return random.Random(seed)


F = Fraction


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def polar_triangle(M, rng, bound=6):
    """A polar triangle (p, q, r) of the conic with symmetric matrix M, all vertices distinct."""
    from grasslines.core.matrix import rank

    while True:
        p = [rng.randint(-bound, bound) for _ in range(3)]
        if not any(p):
            continue
        lp = M @ p
        # q on the polar of p, r the pole of the line pq
        a = [rng.randint(-bound, bound) for _ in range(3)]
        q = cross(lp, a)
        if not any(q):
            continue
        r = cross(lp, M @ q)
        if not any(r) or rank([p, list(q), list(r)]) < 3:
            continue
        return p, list(q), list(r)


def section_lines_through_surface(net, cmap, rng, count, bound=3):
    """Lines of the section through image points of the center map, drawn at random."""
    from grasslines.core.matrix import rank
    from grasslines.grassmann import SectionSpec, lines_through_point
    from grasslines.points import LineRep

    s = SectionSpec(4, list(net))
    out = []
    while len(out) < count:
        p = [rng.randint(-bound, bound) for _ in range(3)]
        if not any(p):
            continue
        c = cmap(*p)
        K = lines_through_point(c, s)
        q = combine(K, [rng.randint(-4, 4) for _ in K])
        if rank([list(c), q]) == 2:
            out.append(LineRep(c, q))
    return out


ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, title, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {k}: {title} ({detail})")
