#!/usr/bin/env python3
"""Render a ddmagsim sweep CSV as a figure.

Usage:
    python3 render_figure.py --csv PATH --figure figN --out PATH

Works uninstalled (the package directory sits next to this script) or via
the `render-figure` entry point after `pip install`.
"""

import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from ddmagsim_figures.cli import main

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
