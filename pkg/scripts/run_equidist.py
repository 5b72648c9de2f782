#!/usr/bin/env python3
"""Run the cusp-section equidistribution experiment for one or more fields.

Produces a CSV per field plus a log-log SVG, and prints the fitted decay
exponent against the 0.5 (unconditional) and 0.75 (Riemann hypothesis)
markers.
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from hilmod.cli import main as cli_main


def run(argv=None):
    ap = argparse.ArgumentParser()
    ap.add_argument("--fields", default="0,5,-1",
                    help="comma-separated field radicands")
    ap.add_argument("--outdir", default="equidist_out")
    args = ap.parse_args(argv)
    outdir = pathlib.Path(args.outdir)
    outdir.mkdir(exist_ok=True)
    for d in (int(v) for v in args.fields.split(",")):
        k_min, k_max = (3, 12) if d == 0 else (2, 8)
        tag = "d%+d" % d
        rc = cli_main([
            "equidist", "--field-d", str(d),
            "--k-min", str(k_min), "--k-max", str(k_max),
            "--out", str(outdir / ("%s.csv" % tag)),
            "--svg", str(outdir / ("%s.svg" % tag)),
        ])
        if rc:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(run())
