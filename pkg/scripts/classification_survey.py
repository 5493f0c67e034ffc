"""Classify many random admissible specs and tabulate the verdicts.

    python scripts/classification_survey.py --count 500 --seed 1
"""

import argparse
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from qtilde import ColumnPair, SystemSpec, classify, validate


@dataclass
class SurveyConfig:
    count: int = 200
    seed: int = 0
    max_m: int = 3
    max_preamble: int = 2
    max_block: int = 2
    # chance that a drawn partial sum is reused, which puts a zero entry in p
    zero_rate: float = 0.15


def draw_column(rng: random.Random, cfg: SurveyConfig) -> ColumnPair:
    m = rng.randint(1, cfg.max_m)
    w = [rng.randint(1, 9) for _ in range(m + 1)]
    q = [Fraction(v, sum(w)) for v in w]
    cuts = [Fraction(0)]
    for _ in range(m):
        if cuts[-1] != 0 and rng.random() < cfg.zero_rate:
            cuts.append(cuts[-1])
        else:
            cuts.append(Fraction(rng.randint(1, 19), 20))
    cuts.append(Fraction(1))
    p = [cuts[i + 1] - cuts[i] for i in range(m + 1)]
    return ColumnPair(tuple(q), tuple(p))


def draw_spec(rng: random.Random, cfg: SurveyConfig) -> SystemSpec:
    return SystemSpec(
        tuple(draw_column(rng, cfg) for _ in range(rng.randint(0, cfg.max_preamble))),
        tuple(draw_column(rng, cfg) for _ in range(rng.randint(1, cfg.max_block))),
    )


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--count", type=int, default=SurveyConfig.count)
    parser.add_argument("--seed", type=int, default=SurveyConfig.seed)
    args = parser.parse_args()
    cfg = SurveyConfig(count=args.count, seed=args.seed)
    rng = random.Random(cfg.seed)

    rows = Counter()
    skipped = 0
    for _ in range(cfg.count):
        spec = draw_spec(rng, cfg)
        if not validate(spec).ok:
            skipped += 1
            continue
        rows[classify(spec).summary()] += 1

    width = max(len(k) for k in rows) if rows else 10
    print(f"{'verdict':<{width}}  count")
    for verdict, n in rows.most_common():
        print(f"{verdict:<{width}}  {n}")
    print(f"# {cfg.count} drawn, {skipped} rejected by validation (seed {cfg.seed})")


if __name__ == "__main__":
    main()
