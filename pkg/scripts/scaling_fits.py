"""Fit A and p_th for the exact rotated counts, both bounds, and the unrotated code."""

import argparse

from qec_pathcount import fit_bound, fit_model


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=1e-4)
    ap.add_argument("--d-max", type=int, nargs="+", default=[25, 101])
    args = ap.parse_args()
    print(f"{'series':<12} {'d range':>9} {'A':>10} {'p_th':>10} {'1-R^2':>10}")
    for d_max in args.d_max:
        fits = {
            "rotated": fit_model("rotated", args.p, 3, d_max),
            "upper": fit_bound("upper", args.p, 3, d_max),
            "lower": fit_bound("lower", args.p, 3, d_max),
            "unrotated": fit_model("unrotated", args.p, 3, d_max),
        }
        for name, f in fits.items():
            print(f"{name:<12} {f'3..{d_max}':>9} {f.A:>10.4g} {f.p_th:>10.4g} {1 - f.r_squared:>10.3g}")


if __name__ == "__main__":
    main()
