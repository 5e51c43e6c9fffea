"""Time the compiled common-neighbour kernel against the numpy fallback.

    python benchmarks/bench_kernels.py --sizes 100,200,400 --densities 0.02,0.1,0.3
"""

import argparse
import time

import numpy as np

from lrlink.kernels import BACKENDS, MODES


def random_adjacency(n, density, rng, weighted):
    upper = np.triu(rng.random((n, n)) < density, 1)
    w = rng.uniform(0.5, 2.0, (n, n)) if weighted else np.ones((n, n))
    a = np.where(upper, w, 0.0)
    return a + a.T


def best_time(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="100,200,400")
    parser.add_argument("--densities", default="0.02,0.1,0.3")
    parser.add_argument("--modes", default=",".join(map(str, MODES)))
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    if "compiled" not in BACKENDS:
        print("compiled extension not built; only the numpy backend is available")
    rng = np.random.default_rng(args.seed)
    names = list(BACKENDS)
    print(f"{'n':>5} {'density':>8} {'mode':>4} " + " ".join(f"{b + ' s':>12}" for b in names)
          + (f" {'speedup':>8}" if len(names) > 1 else ""))
    for n in map(int, args.sizes.split(",")):
        for density in map(float, args.densities.split(",")):
            for mode in map(int, args.modes.split(",")):
                a = random_adjacency(n, density, rng, weighted=mode >= 2)
                coef = rng.uniform(0.1, 1.0, n)
                results = [BACKENDS[b](a, coef, mode) for b in names]
                for other in results[1:]:
                    np.testing.assert_allclose(other, results[0], rtol=1e-10, atol=1e-12)
                times = [best_time(lambda b=b: BACKENDS[b](a, coef, mode), args.repeat) for b in names]
                line = f"{n:>5} {density:>8.2f} {mode:>4} " + " ".join(f"{t:>12.5f}" for t in times)
                if len(times) > 1:
                    line += f" {times[0] / times[1]:>8.1f}x"
                print(line)


if __name__ == "__main__":
    main()
