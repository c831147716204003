"""Accuracy of the chart inverses as samples approach the disc boundary.

For each chart, draw interior parameters, push one randomly chosen disc
factor out to radius 1 - margin, map to the stage sphere and invert.
Near a boundary face the image approaches the basepoint, so small margins
end in basepoint rejections rather than wrong answers; those are counted
separately from numeric stalls.

    python scripts/inversion_accuracy.py [--n 100] [--seed 0]
"""
import argparse

import numpy as np

from spin7cells import charts
from spin7cells.errors import BoundaryError, NumericError

MARGINS = (0.5, 0.1, 0.05, 1e-2, 1e-3, 1e-4)


def invert(k, t):
    return charts.invert_p0_phi7(t) if k == 7 else charts.invert_chart_numeric(k, t)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    print(f"{'k':>2} {'margin':>8} {'param err':>10} {'residual':>10} {'basepoint':>9} {'stalled':>7}")
    for k in (7, 6, 5, 3):
        for margin in MARGINS:
            perr = res = 0.0
            rejected = stalled = 0
            for _ in range(args.n):
                v = charts.sample_interior(k, rng, charts.MARGIN)
                sl = charts.SLICES[k][rng.integers(len(charts.SLICES[k]))]
                v[sl] *= (1.0 - margin) / max(np.linalg.norm(v[sl]), 1e-300)
                t = charts.stage_projection(k, charts.char_map(k, v))
                try:
                    w = invert(k, t)
                except BoundaryError:
                    rejected += 1
                    continue
                except NumericError:
                    stalled += 1
                    continue
                perr = max(perr, float(np.abs(w - v).max()))
                res = max(res, float(np.linalg.norm(charts.stage_projection(k, charts.char_map(k, w)) - t)))
            print(f"{k:>2} {margin:>8.0e} {perr:>10.2e} {res:>10.2e} {rejected:>9} {stalled:>7}")


if __name__ == "__main__":
    main()
