"""Count main classes of Latin squares and the H^1 of each class's matroid.

For every order up to --max-order this prints the number of main classes,
and for orders >= 2 the dimension of H^1 of the Orlik-Solomon algebra of
M[K] under the block weight (1, 1, -2), one value per class.
"""
import argparse
import time
from dataclasses import dataclass

from osresonance.latin import build_matroid, main_class_representatives
from osresonance.oscohomology import OSAlgebra, Weight, cohomology


@dataclass
class TableConfig:
    max_order: int = 5
    block_values: tuple = (1, 1, -2)
    cohomology_up_to: int = 5     # building A(M) for order 6 takes a while


def run(cfg: TableConfig):
    print(f"{'m':>2} {'classes':>8} {'seconds':>8}  H^1 per class")
    for m in range(1, cfg.max_order + 1):
        t = time.perf_counter()
        reps = main_class_representatives(m)
        dt = time.perf_counter() - t
        h1 = ""
        if 2 <= m <= cfg.cohomology_up_to:
            w = Weight.block(m, cfg.block_values)
            h1 = str([cohomology(OSAlgebra(build_matroid(K)), w).dims_A[1] for K in reps])
        print(f"{m:>2} {len(reps):>8} {dt:>8.2f}  {h1}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=TableConfig.max_order)
    ap.add_argument("--cohomology-up-to", type=int, default=TableConfig.cohomology_up_to)
    a = ap.parse_args()
    run(TableConfig(max_order=a.max_order, cohomology_up_to=a.cohomology_up_to))
