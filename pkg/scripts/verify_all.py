#!/usr/bin/env python3
"""Verify every bundled case and print the per-case verdicts."""

import sys

from ampcyl.cli import main

if __name__ == "__main__":
    sys.exit(main(["verify", "--all"] + sys.argv[1:]))
