"""Table of exact minimum-length path counts against the d 2^(d-1) reference."""

import argparse

from qec_pathcount import count_paths, path_ratio


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--d-max", type=int, default=25)
    args = ap.parse_args()
    print(f"{'d':>4} {'N_paths':>14} {'ratio':>8}")
    for d in range(3, args.d_max + 1, 2):
        print(f"{d:>4} {count_paths(d):>14} {path_ratio(d):>8.4f}")


if __name__ == "__main__":
    main()
