#!/usr/bin/env python3
"""Regenerate the vertex-count table for all four families and diff it
against the verified reference counts (exit 1 on any mismatch)."""

import sys

from copulatope.cli import main

if __name__ == "__main__":
    sys.exit(main(["table1"] + sys.argv[1:]))
