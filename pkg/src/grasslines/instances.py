"""Seeded sections built from normal forms, with their ground truth.

Each generator returns the section conjugated by a random invertible integer
matrix T₀ (the point map) and a sidecar dictionary recording the normal-form
parameters and T₀, so round trips can be checked without recomputation.
"""

import random

from .autgroup import hyperplane_normal_form
from .core.matrix import RatMatrix
from .core.rational import format_rational, to_rational
from .grassmann import SectionSpec
from .io import matrix_to_json
from .nets import g15_normal_net, net_from_projection_center
from .pencils import donagi_pencil, even_normal_pencil

__all__ = ["KINDS", "random_invertible", "generate", "normal_section"]

KINDS = ("odd-pencil", "even-pencil", "net-g15", "net-g14", "hyperplane")


def random_invertible(rng, n, bound=3, unimodular=False):
    """Random integer matrix with entries in [−bound, bound]; det 1 when ``unimodular``."""
    while True:
        m = RatMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(n)])
        d = m.det()
        if d == 0:
            continue
        if unimodular and d != 1:
            rows = m.tolist()
            rows[0] = [x / d for x in rows[0]]
            m = RatMatrix(rows)
        return m


def _int(x, name):
    x = to_rational(x)
    if x.denominator != 1:
        raise ValueError(f"{name} must be an integer")
    return int(x)


def generate(kind, params=(), seed=0, bound=3):
    """(SectionSpec, sidecar) for one of ``KINDS``."""
    rng = random.Random(seed)
    params = [to_rational(p) for p in params]
    truth = {"kind": kind, "seed": seed}
    if kind == "odd-pencil":
        if len(params) < 2 or len(set(params)) != len(params):
            raise ValueError("odd-pencil needs at least two distinct lambdas")
        p = donagi_pencil(params)
        N, mats = 2 * len(params) - 1, [p.A, p.B]
        truth["lambdas"] = [format_rational(x) for x in params]
    elif kind == "even-pencil":
        n = _int(params[0], "n") if params else 2
        if n < 2:
            raise ValueError("even-pencil needs n ≥ 2")
        p = even_normal_pencil(n)
        N, mats = 2 * n, [p.A, p.B]
        truth["n"] = n
    elif kind == "net-g15":
        if len(params) != 4:
            raise ValueError("net-g15 needs (alpha, beta, gamma, delta)")
        N, mats = 5, list(g15_normal_net(*params))
        truth["params"] = [format_rational(x) for x in params]
    elif kind == "net-g14":
        if params and len(params) != 6:
            raise ValueError("net-g14 takes P as (P00, P11, P22, P01, P02, P12)")
        p00, p11, p22, p01, p02, p12 = params or [1, 1, 1, 0, 0, 0]
        P = RatMatrix([[p00, p01, p02], [p01, p11, p12], [p02, p12, p22]])
        N, mats = 4, list(net_from_projection_center(P, rng))
        truth["P_matrix"] = matrix_to_json(P)
    elif kind == "hyperplane":
        N = _int(params[0], "N") if params else 4
        if N < 3:
            raise ValueError("hyperplane needs N ≥ 3")
        mats = [hyperplane_normal_form(N)]
        truth["N"] = N
    else:
        raise ValueError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    T0 = random_invertible(rng, N + 1, bound)
    truth["T0"] = matrix_to_json(T0)
    return SectionSpec(N, mats).transform(T0), truth


def normal_section(truth):
    """Rebuild the normal-form section recorded in a sidecar."""
    kind = truth["kind"]
    if kind == "odd-pencil":
        lam = [to_rational(x) for x in truth["lambdas"]]
        p = donagi_pencil(lam)
        return SectionSpec(2 * len(lam) - 1, [p.A, p.B])
    if kind == "even-pencil":
        p = even_normal_pencil(truth["n"])
        return SectionSpec(2 * truth["n"], [p.A, p.B])
    if kind == "net-g15":
        return SectionSpec(5, list(g15_normal_net(*[to_rational(x) for x in truth["params"]])))
    if kind == "hyperplane":
        return SectionSpec(truth["N"], [hyperplane_normal_form(truth["N"])])
    raise ValueError(f"no closed-form normal section for kind {kind!r}")

