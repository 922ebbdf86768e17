"""Export singularities, cut curves and contours for one (g, ell, E) for plotting.

Writes two CSV files next to --prefix: <prefix>_swkb.csv (poles of the SWKB
integrand, cut curves and their enclosing tubes) and <prefix>_qhj.csv (poles
of the momentum function and the quantization contour at level n = E/4 when
E is a multiple of 4).
"""
import argparse

from xlq.cli import RunConfig, run


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--g", type=float, default=1.0)
    ap.add_argument("--ell", type=int, default=2)
    ap.add_argument("--energy", type=float, default=8.0)
    ap.add_argument("--prefix", default="figure1")
    args = ap.parse_args()
    run(RunConfig("ledger", g=args.g, ell=args.ell, energy=args.energy,
                  output_path=f"{args.prefix}_ledger.json", plot_path=f"{args.prefix}_swkb.csv"))
    if args.energy % 4 == 0:
        run(RunConfig("qhj", g=args.g, ell=args.ell, n=int(args.energy // 4),
                      output_path=f"{args.prefix}_qhj.json", plot_path=f"{args.prefix}_qhj.csv"))


if __name__ == "__main__":
    main()
