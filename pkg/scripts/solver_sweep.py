"""Run the spectral solver over random connected graphs and report residuals, restarts and timing.

Usage: python scripts/solver_sweep.py [--count 200] [--min-n 4] [--max-n 12] [--seed 0]
"""

import argparse
import time

import numpy as np

from skewmatch.errors import ConvergenceError
from skewmatch.graph import maximum_matching, random_connected_graph
from skewmatch.solver import SolverConfig, SpectralTarget, solve, verify_solution


def random_targets(k, rng, lo=0.5, hi=3.0, min_gap=0.05):
    while True:
        mu = np.sort(rng.uniform(lo, hi, k))[::-1]
        if k < 2 or np.min(-np.diff(mu)) >= min_gap:
            return tuple(mu.tolist())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--min-n", type=int, default=4)
    ap.add_argument("--max-n", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    residuals, times, restarts, iters = [], [], [], []
    failures = 0
    for child in np.random.SeedSequence(args.seed).spawn(args.count):
        rng = np.random.default_rng(child)
        n = int(rng.integers(args.min_n, args.max_n + 1))
        G = random_connected_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        target = SpectralTarget(random_targets(len(maximum_matching(G)), rng), n)
        t0 = time.perf_counter()
        try:
            res = solve(G, target, SolverConfig(seed=int(rng.integers(2**31))))
        except ConvergenceError:
            failures += 1
            continue
        times.append(time.perf_counter() - t0)
        assert verify_solution(G, target, res.matrix).passed
        residuals.append(res.residual)
        restarts.append(len(res.restarts))
        iters.append(res.iterations)

    print(f"instances      {args.count}")
    print(f"failures       {failures}")
    if residuals:
        print(f"max residual   {max(residuals):.2e}")
        print(f"mean iters     {np.mean(iters):.1f}")
        print(f"max restarts   {max(restarts)}")
        print(f"median time    {np.median(times) * 1e3:.1f} ms")
        print(f"max time       {max(times) * 1e3:.1f} ms")


if __name__ == "__main__":
    main()
