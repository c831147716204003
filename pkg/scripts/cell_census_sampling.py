"""Factorize random Spin(7) elements and tally the cells they land in.

Random products of generator matrices are not Haar distributed.  A
product using all four generator kinds lands in the top cell e^21; one
that never uses D stays in G2 (top cell e^14) and one that never uses C
stays in SU(4) (top cell e^15), so the lower cells show up with the
probability that a kind is missing.

    python scripts/cell_census_sampling.py [--n 500] [--factors 8] [--seed 0]
"""
import argparse
import time
from collections import Counter

import numpy as np

from spin7cells.charts import factorize
from spin7cells.errors import InconsistencyError, NumericError
from spin7cells.groups import random_spin7


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=500)
    ap.add_argument("--factors", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    tally, failures, worst = Counter(), 0, 0.0
    start = time.perf_counter()
    for _ in range(args.n):
        g = random_spin7(rng, args.factors)
        try:
            f = factorize(g)
        except (NumericError, InconsistencyError):
            failures += 1
            continue
        tally[(f.label.dim, f.label.word)] += 1
        worst = max(worst, float(np.abs(f.matrix() - g).max()))
    elapsed = time.perf_counter() - start

    for (dim, word), count in sorted(tally.items()):
        print(f"e^{dim:<3d} {word:16s} {count}")
    print(f"failures {failures}/{args.n}, worst reconstruction {worst:.2e}, "
          f"{1e3 * elapsed / args.n:.1f} ms per element")


if __name__ == "__main__":
    main()
