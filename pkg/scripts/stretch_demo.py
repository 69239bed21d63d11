"""Dual Hamming [7,3,4] analog code along x_1 with x_2, x_3 fixed: the jump at
x_1 = 1/2 and the averaged and worst-case stretch d_j(delta)."""

import argparse

from analog_jscc.block_codes import dual_hamming
from analog_jscc.stretch import DELTAS_DEFAULT, jump_size, stretch_factor


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depth", type=int, default=3)
    ap.add_argument("--points", type=int, default=100_000)
    args = ap.parse_args()
    code = dual_hamming()
    print(f"squared jump across x_1 = 1/2: {jump_size(code, depth=args.depth):.6f}")
    print("delta,mean,sup,mean/delta")
    for d in DELTAS_DEFAULT:
        mean, sup = stretch_factor(d, code, points=args.points, depth=args.depth)
        print(f"{d:.6g},{mean:.6g},{sup:.6g},{mean / d:.4g}")


if __name__ == "__main__":
    main()
