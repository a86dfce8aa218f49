"""Command-line figure renderer.

Exit status: 0 on success, 2 for bad arguments (argparse), 1 for schema or
I/O failures.
"""

from __future__ import annotations

import argparse
import sys

from .csvio import SchemaError
from .figures import FIGURE_IDS, FigureRecipe, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render-figure",
        description="Render a ddmagsim sweep CSV as an image.",
    )
    parser.add_argument("--csv", required=True, help="input sweep CSV path")
    parser.add_argument("--figure", required=True, choices=FIGURE_IDS,
                        help="figure layout to draw")
    parser.add_argument("--out", required=True, help="output image path")
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    recipe = FigureRecipe(csv_path=args.csv, figure_id=args.figure,
                          output_image_path=args.out)
    try:
        render(recipe)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
