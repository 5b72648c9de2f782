#!/usr/bin/env python3
"""Run the full battery of identity checks and exit nonzero on any failure."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilmod.cli import main as cli_main

CHECKS = [
    ["check", "bessel"],
    ["check", "functional-equation", "--field-d", "0"],
    ["check", "functional-equation", "--field-d", "5"],
    ["check", "functional-equation", "--field-d", "-1"],
    ["check", "volume", "--field-d", "0"],
    ["check", "volume", "--field-d", "5"],
    ["check", "volume", "--field-d", "-1"],
    ["check", "residue", "--field-d", "0"],
    ["check", "residue", "--field-d", "5"],
    ["check", "residue", "--field-d", "-1"],
    ["check", "maass-selberg", "--field-d", "0"],
    ["check", "rankin-selberg", "--field-d", "0"],
    ["check", "rankin-selberg", "--field-d", "5"],
]


def run():
    worst = 0
    for argv in CHECKS:
        print("== hilmod " + " ".join(argv))
        worst = max(worst, cli_main(argv))
    return worst


if __name__ == "__main__":
    sys.exit(run())
