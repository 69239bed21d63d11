"""Union-bound distortion curves for the Golay and [72,36,16] constructions,
with the matching Shannon bounds, plus their high-SNR slopes."""

import argparse
import csv
from pathlib import Path

import numpy as np

from analog_jscc.block_codes import code_72_36_16, golay
from analog_jscc.bounds import bound_curve, shannon_curve, slope_fit

CASES = [
    # code, B, I values, slope window (dB)
    (golay(), 2, (5, 10, 20, 50), (40.0, 80.0)),
    (code_72_36_16(), 3, (5, 10, 30), (60.0, 100.0)),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/bound_curves.csv")
    args = ap.parse_args()
    grid = np.arange(-5.0, 100.5, 0.5)
    curves = []
    for code, B, stages, window in CASES:
        N = B * code.n / code.k
        for I in stages:
            c = bound_curve(grid, B, I, code)
            curves.append(c)
            print(f"{c.label:40s} slope {slope_fit(c.snr_db, c.distortion, window):+.3f} "
                  f"over {window[0]:.0f}-{window[1]:.0f} dB")
        curves += [shannon_curve(grid, N), shannon_curve(grid, float(B))]
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    with out.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["snr_db", "distortion", "label"])
        for c in curves:
            w.writerows([repr(float(x)), repr(float(d)), c.label] for x, d in zip(c.snr_db, c.distortion))
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
