"""Compare the numba and numpy paths of the coefficient kernel.

    python benchmarks/bench_kernels.py [--count 100000]
"""
import argparse
import timeit

import numpy as np

from blochspace import _kernels
from blochspace.generators import build_generator_basis
from blochspace.sampling import random_ball_vectors
from blochspace.statemap import bloch_to_matrix


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--count", type=int, default=100_000)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    print(f"batched a_0..a_N for {args.count} matrices, best of {args.repeat} (smaller is better)\n")
    print(f"{'N':>3} {'numpy [s]':>11} {'numba [s]':>11} {'speedup':>8}")
    for n in (2, 3, 4, 6, 8):
        rhos = bloch_to_matrix(random_ball_vectors(n, args.count, seed=n), build_generator_basis(n))
        rhos = np.ascontiguousarray(rhos)

        def run_numpy():
            return _kernels.newton_numpy(_kernels.power_sums_numpy(rhos, n), n)

        def run_numba():
            return _kernels.newton_numba(_kernels.power_sums_numba(rhos, n), n)

        run_numba()  # compile outside the timer
        assert np.allclose(run_numpy(), run_numba(), atol=1e-12)
        t_np = min(timeit.repeat(run_numpy, number=1, repeat=args.repeat))
        t_nb = min(timeit.repeat(run_numba, number=1, repeat=args.repeat))
        print(f"{n:>3} {t_np:>11.4f} {t_nb:>11.4f} {t_np / t_nb:>7.1f}x")


if __name__ == "__main__":
    main()
