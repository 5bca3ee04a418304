"""Benchmark the hot kernels: numba @njit vs pure numpy.

Runs both implementations on identical inputs and prints a timing table.
The library selects the numba path automatically; set SEP_HORN_NO_NUMBA=1
to force the numpy path at import time (this script always times both).

Usage: python benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import time

import numpy as np

from sephorn import kernels
from sephorn.horn import flat_index_arrays
from sephorn.su import generator_basis


def timeit(fn, *args, repeats=5):
    fn(*args)  # warm-up (also triggers JIT compilation)
    best = np.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def bench_triple_sums(repeats):
    rng = np.random.default_rng(0)
    rows = []
    for n in (4, 6, 8):
        ii, jj, kk, offs, triples = flat_index_arrays(n)
        a = np.sort(rng.uniform(0.1, 2, n))[::-1].copy()
        b = np.sort(rng.uniform(0.1, 2, n))[::-1].copy()
        c = np.sort(rng.uniform(0.1, 2, n))[::-1].copy()
        la, lb, lc = np.log(a), np.log(b), np.log(c)
        t_np = timeit(kernels.triple_sums_numpy, la, lb, lc, ii, jj, kk, offs,
                      repeats=repeats)
        t_nb = (timeit(kernels.triple_sums_numba, la, lb, lc, ii, jj, kk, offs,
                       repeats=repeats) if kernels.HAVE_NUMBA else float("nan"))
        rows.append((f"triple_sums n={n} ({len(triples)} triples)", t_np, t_nb))
    return rows


def bench_batch_margin(repeats):
    rng = np.random.default_rng(1)
    rows = []
    for n, samples in ((4, 100_000), (5, 50_000)):
        ii, jj, kk, offs, triples = flat_index_arrays(n)
        a = np.sort(rng.normal(size=(samples, n)), axis=1)[:, ::-1].copy()
        b = np.sort(rng.normal(size=(samples, n)), axis=1)[:, ::-1].copy()
        c = np.sort(rng.normal(size=(samples, n)), axis=1)[:, ::-1].copy()
        t_np = timeit(kernels.batch_min_margin_numpy, a, b, c, ii, jj, kk, offs,
                      repeats=repeats)
        t_nb = (timeit(kernels.batch_min_margin_numba, a, b, c, ii, jj, kk, offs,
                       repeats=repeats) if kernels.HAVE_NUMBA else float("nan"))
        rows.append((f"batch_min_margin n={n} S={samples}", t_np, t_nb))
    return rows


def bench_neg_eig_mass(repeats):
    rng = np.random.default_rng(2)
    rows = []
    for dim, evals in ((3, 2000), (4, 500)):
        k = dim * dim - 1
        gens = np.ascontiguousarray(generator_basis(dim).matrices)
        blochs = [np.ascontiguousarray(rng.normal(size=(k, dim * dim)))
                  for _ in range(evals)]

        def run(fn):
            total = 0.0
            for w in blochs:
                f, _ = fn(w, gens)
                total += f
            return total

        t_np = timeit(run, kernels.neg_eig_mass_numpy, repeats=repeats)
        t_nb = (timeit(run, kernels.neg_eig_mass_numba, repeats=repeats)
                if kernels.HAVE_NUMBA else float("nan"))
        rows.append((f"neg_eig_mass N={dim} x{evals} evals", t_np, t_nb))
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    print(f"numba available: {kernels.HAVE_NUMBA}; "
          f"selected path: {'numba' if kernels.USE_NUMBA else 'numpy'}")
    rows = []
    rows += bench_triple_sums(args.repeats)
    rows += bench_batch_margin(args.repeats)
    rows += bench_neg_eig_mass(args.repeats)

    width = max(len(r[0]) for r in rows)
    print(f"\n{'kernel':<{width}}  {'numpy':>10}  {'numba':>10}  {'speedup':>8}")
    for name, t_np, t_nb in rows:
        ratio = t_np / t_nb if t_nb == t_nb and t_nb > 0 else float("nan")
        print(f"{name:<{width}}  {t_np * 1e3:>8.3f}ms  {t_nb * 1e3:>8.3f}ms  "
              f"{ratio:>7.2f}x")


if __name__ == "__main__":
    main()
