#!/usr/bin/env python3
"""Zero-magnetization quench witness traces (xi^2_opt, zeta^2_opt) at
N = 1000 for a linear-side and a bent-side coupling; writes one time-series
CSV per coupling, consumed by the fig4a/fig4b renderers."""

import argparse
import os
import sys

from vibronsim.cli import run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="out")
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--gammas", default="0.1,0.3")
    ap.add_argument("--t-max", type=float, default=1000.0)
    ap.add_argument("--points", type=int, default=10000)
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)
    for gamma in args.gammas.split(","):
        tag = gamma.replace(".", "p")
        code = run(["quench", "--gamma", gamma, "--n", str(args.n),
                    "--t-max", str(args.t_max), "--points", str(args.points),
                    "--out", f"{args.out_dir}/quench_n{args.n}_g{tag}.csv"])
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
