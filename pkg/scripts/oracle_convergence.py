"""Grid study for the finite-difference oracle: error vs interval count."""
import argparse

import numpy as np

from xlq.oracle import GridSpec, solve_spectrum
from xlq.polycore import ModelParams


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--g", type=float, default=1.0)
    ap.add_argument("--ell", type=int, default=1)
    ap.add_argument("--levels", type=int, default=6)
    ap.add_argument("--order", type=int, choices=(2, 4), default=2)
    args = ap.parse_args()
    p = ModelParams(args.g, args.ell)
    exact = 4.0 * np.arange(args.levels)
    prev = None
    print(f"{'M':>6} {'raw max err':>12} {'extrap max err':>15} {'ratio':>7}")
    for m in (500, 1000, 2000, 4000, 8000):
        res = solve_spectrum(p, args.levels, GridSpec(points=m, order=args.order, tol=1.0))
        raw = np.max(np.abs([r.raw_energies[0] for r in res] - exact))
        ext = np.max(np.abs([r.energy for r in res] - exact))
        ratio = f"{prev / raw:7.2f}" if prev else " " * 7
        print(f"{m:6d} {raw:12.3e} {ext:15.3e} {ratio}")
        prev = raw


if __name__ == "__main__":
    main()
