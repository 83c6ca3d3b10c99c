#!/usr/bin/env python3
"""Maximum witness-gap sweep over the (gamma, N) grid used for the
finite-size scaling analysis; writes the sweep CSV consumed by the
fig5a/fig5b renderers.  --quick shrinks the grid for smoke runs."""

import argparse
import os
import sys

from vibronsim.cli import run

FULL_GAMMAS = "0.10,0.15,0.18,0.19,0.20,0.21,0.22,0.26,0.30"
FULL_NS = "500,1000,2000"


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="out/sweep.csv")
    ap.add_argument("--quick", action="store_true")
    ap.add_argument("--workers", type=int, default=0)
    args = ap.parse_args()
    os.makedirs(os.path.dirname(args.out) or ".", exist_ok=True)
    gammas = "0.10,0.30" if args.quick else FULL_GAMMAS
    ns = "100,200" if args.quick else FULL_NS
    return run(["sweep", "--gammas", gammas, "--n-list", ns,
                "--workers", str(args.workers), "--out", args.out])


if __name__ == "__main__":
    sys.exit(main())
