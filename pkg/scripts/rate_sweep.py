#!/usr/bin/env python3
"""Sweep the contraction rate for the scalar benchmark family.

For each rate on a grid, report the certified contraction factor, the
a-priori iteration bound at several accuracies, and the exact first
iteration at which the inclusion actually holds (1-D closed form). Shows
how conservative the bound is across the rate range.

Usage: rate_sweep.py [n] [out.csv]
"""

import math
import pathlib
import sys

from contracta import compute_certificate, exact_k_oracle_1d, iteration_bound, set_distance
from contracta.benchmarks import scalar_seed, scalar_system


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 1
    out = pathlib.Path(sys.argv[2]) if len(sys.argv) > 2 else None
    sysn = scalar_system(n)
    seed = scalar_seed(n)
    d_seed = set_distance(seed, sysn.X).distance
    accuracies = (0.01, 0.05, 0.1)

    header = ["lambda", "eta"] + [f"k_bound(eps={e})" for e in accuracies]
    if n == 1:
        header += [f"k_exact(eps={e})" for e in accuracies]
    lines = [",".join(header)]
    for i in range(9):
        lam = 0.6 + 0.05 * i
        cert = compute_certificate(sysn, lam)
        cells = [f"{lam:.2f}", f"{cert.eta:.6f}"]
        cells += [str(iteration_bound(cert.eta, math.log1p(e), d_seed, n)) for e in accuracies]
        if n == 1:
            cells += [str(exact_k_oracle_1d(lam, e)) for e in accuracies]
        lines.append(",".join(cells))
    text = "\n".join(lines)
    if out is None:
        print(text)
    else:
        out.write_text(text + "\n")
        print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
