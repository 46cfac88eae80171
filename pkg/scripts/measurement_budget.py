"""Repeated syndrome rounds needed before measurement failures fall below data failures."""

import argparse

from qec_pathcount import required_measurements


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--p", type=float, default=1e-4)
    ap.add_argument("--p-m", type=float, default=1e-4)
    ap.add_argument("--d-max", type=int, default=25)
    args = ap.parse_args()
    print(f"{'variant':<10} {'d':>4} {'M':>4} {'L_M':>11} {'L_data':>11}")
    for variant in ("rotated", "unrotated"):
        for d in range(3, args.d_max + 1, 2):
            r = required_measurements(args.p, args.p_m, d, variant)
            print(f"{variant:<10} {d:>4} {r.M:>4} {r.measurement_rate:>11.3e} {r.data_rate:>11.3e}")


if __name__ == "__main__":
    main()
