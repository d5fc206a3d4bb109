"""Sweep dim H^1 for s mutually orthogonal Latin squares of prime order p.

The block weight is (1, 2, ..., s+1, -sum) on the s+2 blocks of M[K_1..K_s];
a few random zero-sum weights with nonzero blocks are added per (p, s).
"""
import argparse
import random
import time
from dataclasses import dataclass

from osresonance.latin import mols_prime
from osresonance.oscohomology import h1_dimension_mols


@dataclass
class SweepConfig:
    primes: tuple = (3, 5)
    random_weights: int = 2
    seed: int = 0


def weights(s: int, cfg: SweepConfig, rng: random.Random):
    base = list(range(1, s + 2))
    yield base + [-sum(base)]
    for _ in range(cfg.random_weights):
        while True:
            vals = [rng.randint(-5, 5) for _ in range(s + 1)]
            if all(vals) and sum(vals):
                yield vals + [-sum(vals)]
                break


def run(cfg: SweepConfig):
    rng = random.Random(cfg.seed)
    print(f"{'p':>2} {'s':>2} {'seconds':>8}  H^1 values")
    for p in cfg.primes:
        for s in range(1, p):
            Ks = mols_prime(p, s)
            t = time.perf_counter()
            vals = [h1_dimension_mols(Ks, w) for w in weights(s, cfg, rng)]
            print(f"{p:>2} {s:>2} {time.perf_counter() - t:>8.2f}  {vals}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, nargs="+", default=list(SweepConfig.primes))
    ap.add_argument("--random-weights", type=int, default=SweepConfig.random_weights)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    run(SweepConfig(tuple(a.primes), a.random_weights, a.seed))
