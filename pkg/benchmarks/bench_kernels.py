"""Time the compiled modular RREF kernel against the numpy fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Both kernels reduce the same
random matrices modulo the same prime and must agree on pivots and result.
"""

import argparse
import timeit

import numpy as np

from grasslines.core import _kernels_fallback
from grasslines.core.modular import PRIMES

try:
    from grasslines.core import _kernels
except ImportError:
    _kernels = None


def _case(rng, rows, cols, p):
    return rng.integers(0, p, size=(rows, cols), dtype=np.int64)


def bench(shapes, repeat, seed):
    p = PRIMES[0]
    rng = np.random.default_rng(seed)
    print(f"{'shape':>12} {'numpy ms':>10} {'cython ms':>10} {'speedup':>8}")
    for rows, cols in shapes:
        a = _case(rng, rows, cols, p)
        b1, b2 = a.copy(), a.copy()
        piv1 = _kernels_fallback.rref_mod_p(b1, p)
        t_np = min(timeit.repeat(lambda: _kernels_fallback.rref_mod_p(a.copy(), p), number=1, repeat=repeat))
        if _kernels is None:
            print(f"{rows:>5}x{cols:<6} {t_np * 1e3:>10.2f} {'n/a':>10} {'n/a':>8}")
            continue
        piv2 = _kernels.rref_mod_p(b2, p)
        if list(piv1) != list(piv2) or not np.array_equal(b1, b2):
            raise SystemExit(f"kernels disagree on a {rows}x{cols} matrix")
        t_cy = min(timeit.repeat(lambda: _kernels.rref_mod_p(a.copy(), p), number=1, repeat=repeat))
        print(f"{rows:>5}x{cols:<6} {t_np * 1e3:>10.2f} {t_cy * 1e3:>10.2f} {t_np / t_cy:>7.1f}x")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    # the aut-dim systems are roughly (l·C(N+1,2)) × ((N+1)² + l²)
    shapes = [(30, 40), (60, 70), (110, 125), (220, 130), (400, 200)]
    bench(shapes, args.repeat, args.seed)


if __name__ == "__main__":
    main()
