"""Binary-input capacity under Gauss-Uniform and Gaussian noise, and the noise
level at which a rate-R level code stops being decodable."""

import argparse
import math

import numpy as np

from analog_jscc.channels import (AwgnChannel, GaussUniform, binary_input_capacity,
                                  capacity_threshold_sigma)

A = math.sqrt(3) / 2


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--amplitude", type=float, default=1.0)
    ap.add_argument("--points", type=int, default=25)
    args = ap.parse_args()
    print("sigma,C_gu,C_awgn")
    for s in np.geomspace(0.01, 10.0, args.points):
        cg = binary_input_capacity(GaussUniform(A, s * s), args.amplitude)
        ca = binary_input_capacity(AwgnChannel(s * s), args.amplitude)
        print(f"{s:.6g},{cg:.8f},{ca:.8f}")
    for R in (0.5, 0.75):
        s = capacity_threshold_sigma(R, A, A)
        print(f"# rate {R}: sigma* = {s:.5f} ({-20 * math.log10(s):.2f} dB), "
              f"level j needs sigma <= sigma*/2^(j-1)")


if __name__ == "__main__":
    main()
