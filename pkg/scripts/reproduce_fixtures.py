"""Regenerate (or check) the golden JSON fixtures shipped with the package.

    python3 scripts/reproduce_fixtures.py          # compare against the stored fixtures
    python3 scripts/reproduce_fixtures.py --update # rewrite them
"""
from __future__ import annotations

import argparse
import sys

from cftbench.cli import run


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--update", action="store_true")
    ap.add_argument("target", nargs="?", default="all", choices=("all", "ade", "table1", "dihedral", "torus"))
    args = ap.parse_args()
    argv = ["reproduce", args.target] + (["--update"] if args.update else [])
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
