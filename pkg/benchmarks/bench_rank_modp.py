"""Compare the numba and numpy paths of the prime-field rank kernel.

Run with ``python benchmarks/bench_rank_modp.py [--sizes 50 100 200] [--repeat 5]``.
Both paths must agree on every rank; the table reports best-of-N wall time.
"""

import argparse
import time

import numpy as np

from bggkit import _modp
from bggkit.exactfield import PRIME


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--sizes", type=int, nargs="+", default=[50, 100, 200, 400])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    if _modp.HAVE_NUMBA:
        _modp.rank_mod_p(np.eye(3, dtype=np.int64), PRIME, jit=True)   # compile outside the timing
    print(f"numba available: {_modp.HAVE_NUMBA}")
    print(f"{'n':>6} {'rank':>6} {'numpy [s]':>12} {'numba [s]':>12} {'speedup':>9}")
    for n in args.sizes:
        # rank-deficient on purpose: product of n x (n/2) and (n/2) x n
        a = rng.integers(-3, 4, size=(n, n // 2)) @ rng.integers(-3, 4, size=(n // 2, n))
        t_np, r_np = _best(lambda: _modp.rank_mod_p(a, PRIME, jit=False), args.repeat)
        if _modp.HAVE_NUMBA:
            t_jit, r_jit = _best(lambda: _modp.rank_mod_p(a, PRIME, jit=True), args.repeat)
            if r_jit != r_np:
                raise SystemExit(f"rank mismatch at n={n}: numba {r_jit}, numpy {r_np}")
            print(f"{n:>6} {r_np:>6} {t_np:>12.5f} {t_jit:>12.5f} {t_np / t_jit:>8.1f}x")
        else:
            print(f"{n:>6} {r_np:>6} {t_np:>12.5f} {'-':>12} {'-':>9}")


if __name__ == "__main__":
    main()
