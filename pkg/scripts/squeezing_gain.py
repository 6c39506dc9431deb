"""Best width-noise reduction from amplitude squeezing at fixed photon number."""

import argparse

import numpy as np

from beamnoise import optimal_squeezing, parse_mode

if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--mode", default="hg:0,0")
    p.add_argument("--nbar", default="0.01:100:25", help="start:stop:steps, log-spaced")
    args = p.parse_args()
    lo, hi, steps = args.nbar.split(":")
    mode = parse_mode(args.mode)
    print("nbar,s,squeezing_db,ratio")
    for nbar in np.geomspace(float(lo), float(hi), int(steps)):
        s, ratio = optimal_squeezing(mode, nbar)
        print(f"{nbar:.6g},{s:.6f},{-20 * s / np.log(10):.4f},{ratio:.6f}")
