"""Command-line entry point: one figure per invocation.

Exit codes: 0 success, 1 input/schema failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .render import render
from .specs import FIGURE_IDS, REQUIRED_INPUTS, FigureSpec


def _parse_inputs(pairs):
    inputs = {}
    for pair in pairs:
        if "=" not in pair:
            raise ValueError(f"--input expects role=path, got {pair!r}")
        role, path = pair.split("=", 1)
        inputs[role] = path
    return inputs


def run(argv) -> int:
    parser = argparse.ArgumentParser(
        prog="vibronfig",
        description="Render a publication-style figure from simulator CSVs")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS)
    parser.add_argument("--input", action="append", default=[],
                        metavar="ROLE=PATH",
                        help="input CSV for a role; see --list-roles")
    parser.add_argument("--out", required=True, help="output image path")
    parser.add_argument("--dpi", type=int, default=None)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    style = {"dpi": args.dpi} if args.dpi else {}
    try:
        spec = FigureSpec(figure_id=args.figure,
                          inputs=_parse_inputs(args.input), style=style)
        render(spec, args.out)
    except (ValueError, OSError) as exc:
        roles = REQUIRED_INPUTS[args.figure]
        print(f"error: {exc}\n{args.figure} requires input roles: {roles}",
              file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
