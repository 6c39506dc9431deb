"""Fock-state width noise of flattened Gaussians against their order N.

Prints 1 - D00^2/F00 (noise relative to a coherent beam) and F00/D00^2 - 1
(noise over the squared mean width at one photon) for N = 0..30.
"""

import argparse

from beamnoise import FlattenedGaussian, Fock, relative_noise_by_mean, relative_width_noise


def table(max_order: int):
    for n in range(max_order + 1):
        mode = FlattenedGaussian(n)
        yield n, relative_width_noise(mode, Fock(1)), relative_noise_by_mean(mode, Fock(1))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--max-order", type=int, default=30)
    args = p.parse_args()
    print("N,vs_coherent,by_mean")
    for n, a, b in table(args.max_order):
        print(f"{n},{a:.6f},{b:.6f}")
