"""Rectangular layouts for biased noise, and the rotated/unrotated crossover."""

import argparse

from qec_pathcount import optimize_rectangular, recommend_variant, square_layout
from qec_pathcount.design import combined_rate, directional_rate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--Q", type=int, nargs="+", default=[97, 241, 881])
    ap.add_argument("--p-x", type=float, default=1e-3)
    ap.add_argument("--p-z", type=float, default=1e-4)
    args = ap.parse_args()
    for Q in args.Q:
        res = optimize_rectangular(Q, args.p_x, args.p_z)
        sq = square_layout(Q)
        L_sq = combined_rate(directional_rate(sq.h, args.p_x), directional_rate(sq.w, args.p_z))
        print(
            f"Q={Q}: best {res.layout.h}x{res.layout.w} L={res.L_total:.3e} "
            f"vs square {sq.h}x{sq.w} L={L_sq:.3e}"
        )
    for p in (1e-4, 1e-3, 1e-2):
        for d_e in (3, 8, 13):
            rec = recommend_variant(p, d_e)
            print(f"p={p:.0e} d_e={d_e}: {rec.variant}")


if __name__ == "__main__":
    main()
