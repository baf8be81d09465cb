"""Compare the alternating resolution rank sum with the generic rank on random matrices.

    python3 scripts/euler_survey.py --count 200 --size 3 --degree 1
"""
from __future__ import annotations

import argparse
import random
import time
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from flatband.algebra.laurent import LaurentPoly
from flatband.algebra.matrix import PolyMatrix, fraction_field_rank
from flatband.syzygy.resolution import free_resolution, kernel_of_map


@dataclass
class Config:
    count: int = 100
    size: int = 3
    degree: int = 1
    nvars: int = 2
    seed: int = 0


def random_entry(rng: random.Random, cfg: Config) -> LaurentPoly:
    terms = {}
    for _ in range(rng.randint(0, 3)):
        e = tuple(rng.randint(0, cfg.degree) for _ in range(cfg.nvars))
        if sum(e) <= cfg.degree:
            terms[e] = Fraction(rng.randint(-3, 3))
    return LaurentPoly(cfg.nvars, terms)


def random_matrix(rng: random.Random, cfg: Config) -> PolyMatrix:
    n = cfg.size
    # lower the rank half of the time by repeating a combination of columns
    cols = [[random_entry(rng, cfg) for _ in range(n)] for _ in range(n)]
    for k in range(n):
        if rng.random() < 0.3 and k:
            a = Fraction(rng.randint(-2, 2))
            cols[k] = [a * x for x in cols[rng.randrange(k)]]
    return PolyMatrix([[cols[j][i] for j in range(n)] for i in range(n)], cfg.nvars)


def main(cfg: Config) -> int:
    rng = random.Random(cfg.seed)
    lengths, bad = Counter(), 0
    t0 = time.perf_counter()
    for _ in range(cfg.count):
        m = random_matrix(rng, cfg)
        res = free_resolution(kernel_of_map(m), cfg.nvars)
        rank = fraction_field_rank(m)
        lengths[tuple(res.ranks)] += 1
        if res.euler_characteristic() != cfg.size - rank:
            bad += 1
            print("mismatch:", m.render(), res.ranks, rank)
    print(f"{cfg.count} matrices, {bad} mismatches, {time.perf_counter() - t0:.1f}s")
    for ranks, k in sorted(lengths.items()):
        print(f"  ranks {list(ranks)}: {k}")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for f, default in Config().__dict__.items():
        ap.add_argument(f"--{f}", type=int, default=default)
    raise SystemExit(main(Config(**vars(ap.parse_args()))))
