#!/usr/bin/env python3
"""Mean-field phase portrait: fixed-energy trajectories plus the separatrix
for a bent-side coupling; writes the trajectory CSV consumed by the fig6
renderer."""

import argparse
import os
import sys

from vibronsim.cli import run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/meanfield_g0p5.csv")
    ap.add_argument("--gamma", type=float, default=0.5)
    ap.add_argument("--trajectories", type=int, default=8)
    args = ap.parse_args()
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    return run(["meanfield", "--gamma", str(args.gamma),
                "--trajectories", str(args.trajectories),
                "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
