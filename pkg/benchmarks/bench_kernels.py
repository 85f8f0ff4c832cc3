"""Time the numba and numpy kernels side by side.

    python benchmarks/bench_kernels.py [--n 1024] [--walks 100000] [--steps 20]

Numba timings exclude the first (compiling) call.
"""
import argparse
import time

import numpy as np

from dsdkit._kernels import _numpy
from dsdkit.graph import hypercube_graph

try:
    from dsdkit._kernels import _numba
except ImportError:  # pragma: no cover
    _numba = None


def best_of(fn, repeat=3):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1024, help="rows for the all-pairs kernel")
    ap.add_argument("--walks", type=int, default=100_000)
    ap.add_argument("--steps", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    M = rng.normal(size=(args.n, args.n))
    g = hypercube_graph(10)
    U = rng.random((args.walks, args.steps))

    cases = [
        (f"pairwise_lq q=1   n={args.n}", lambda k: k.pairwise_lq(M, 1.0)),
        (f"pairwise_lq q=2.5 n={args.n}", lambda k: k.pairwise_lq(M, 2.5)),
        (f"walk_visits Q10 walks={args.walks} steps={args.steps}",
         lambda k: k.walk_visits(g.indptr, g.indices, 0, 0.3, U)),
    ]
    print(f"{'kernel':<44}{'numpy s':>10}{'numba s':>10}{'speedup':>9}")
    for label, call in cases:
        t_np = best_of(lambda: call(_numpy), args.repeat)
        if _numba is None:
            print(f"{label:<44}{t_np:>10.3f}{'n/a':>10}{'':>9}")
            continue
        call(_numba)  # compile
        t_nb = best_of(lambda: call(_numba), args.repeat)
        print(f"{label:<44}{t_np:>10.3f}{t_nb:>10.3f}{t_np / t_nb:>8.1f}x")


if __name__ == "__main__":
    main()
