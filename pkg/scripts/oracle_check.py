"""Compare the candidate solver with the brute-force grid oracle on seeded random scenarios."""

import argparse
import time

import numpy as np

from uavjam.oracle import grid_oracle
from uavjam.scenario import Scenario, UavRelay
from uavjam.solver import solve


def random_scenario(rng, n, distance):
    xs = np.sort(rng.uniform(0, distance, n))
    uavs = tuple(UavRelay(float(x), float(rng.uniform(-10, 10)), float(rng.uniform(45, 65)),
                          float(rng.uniform(20, 25))) for x in xs)
    return Scenario(distance, uavs, y_msi=float(rng.uniform(-20, 20)))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-n", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    gaps = []
    t0 = time.perf_counter()
    for _ in range(args.count):
        n = int(rng.integers(1, args.max_n + 1))
        s = random_scenario(rng, n, 100.0 if n == 1 else 5000.0)
        r, o = solve(s), grid_oracle(s)
        gaps.append((o.value - r.sir_max_opt) / r.sir_max_opt)
    gaps = np.array(gaps)
    print(f"{args.count} scenarios in {time.perf_counter() - t0:.1f} s")
    print(f"relative gap oracle - solver: min {gaps.min():.3e}, max {gaps.max():.3e}")


if __name__ == "__main__":
    main()
