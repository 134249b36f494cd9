#!/usr/bin/env python3
"""Regenerate the SVG figure gallery.

Writes every figure (or re-writes byte-identical files, since the gallery is
deterministic) and prints the paths.
"""

import argparse

from curvecraft.figures import FIGURE_NUMBERS, write_figures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("outdir", nargs="?", default="figures",
                        help="output directory (default: figures)")
    parser.add_argument("--which", type=int, choices=FIGURE_NUMBERS,
                        action="append",
                        help="restrict to one figure number, repeatable")
    args = parser.parse_args()
    numbers = tuple(args.which) if args.which else FIGURE_NUMBERS
    for path in write_figures(args.outdir, numbers):
        print(path)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
