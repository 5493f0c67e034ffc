"""Sup distance between the empirical CDF of samples and F, as the sample grows.

    python scripts/sampling_convergence.py --spec specs/nega2.json --seeds 1 2 3
"""

import argparse
import math
import time
from dataclasses import dataclass, field

from qtilde import cdf_distance, load_spec, sample


@dataclass
class ConvergenceConfig:
    counts: list = field(default_factory=lambda: [1_000, 4_000, 16_000, 64_000])
    seeds: list = field(default_factory=lambda: [1, 2, 3])
    depth: int = 40
    grid: int = 256


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--spec", required=True)
    parser.add_argument("--counts", type=int, nargs="+", default=ConvergenceConfig().counts)
    parser.add_argument("--seeds", type=int, nargs="+", default=ConvergenceConfig().seeds)
    parser.add_argument("--depth", type=int, default=ConvergenceConfig.depth)
    parser.add_argument("--grid", type=int, default=ConvergenceConfig.grid)
    args = parser.parse_args()
    cfg = ConvergenceConfig(args.counts, args.seeds, args.depth, args.grid)
    spec = load_spec(args.spec)

    print("count,seed,distance,distance*sqrt(count),seconds")
    for count in cfg.counts:
        for seed in cfg.seeds:
            t0 = time.perf_counter()
            d = float(cdf_distance(spec, sample(spec, seed, count, cfg.depth), cfg.grid))
            print(f"{count},{seed},{d:.5f},{d * math.sqrt(count):.3f},{time.perf_counter() - t0:.2f}")


if __name__ == "__main__":
    main()
