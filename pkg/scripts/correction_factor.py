"""Leading-order rate against the rigorous next-order correction interval."""

import argparse
import warnings

from qec_pathcount import RegimeWarning, correction_interval, logical_rate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, nargs="+", default=[1e-5, 1e-4, 1e-3])
    ap.add_argument("--d-max", type=int, default=25)
    args = ap.parse_args()
    print(f"{'p':>8} {'d':>4} {'L_lead':>11} {'corr_lo':>9} {'corr_hi':>9}")
    for p in args.p:
        for d in range(3, args.d_max + 1, 2):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RegimeWarning)
                L = logical_rate(d, p).value
            lo, hi = correction_interval(d, p)
            print(f"{p:>8.0e} {d:>4} {L:>11.3e} {lo:>9.3g} {hi:>9.3g}")


if __name__ == "__main__":
    main()
