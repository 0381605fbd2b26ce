#!/usr/bin/env python3
"""Render the cone figure of every bundled case into figures/."""

import sys

from ampcyl.cli import main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "figures"
    sys.exit(main(["figure", "--all", "--out", out]))
