#!/usr/bin/env python
"""Pressure deviation |p - p0| against smoothness for several lattices.

Writes one CSV (same columns as ``dimerlab sweep``) covering every lattice.
"""
from __future__ import annotations

import argparse
import sys

from dimerlab.sweep import records_to_csv, sweep

DEFAULT_LATTICES = ["1x8", "1x12", "1x16", "2x4", "2x6"]


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--lattices", nargs="+", default=DEFAULT_LATTICES, help="dxL pairs, e.g. 2x6")
    p.add_argument("--betas", default="1.6,0.8,0.4,0.2,0.1,0.05,0.025,0")
    p.add_argument("--family", default="exponential", choices=["exponential", "constant"])
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default="-")
    args = p.parse_args()

    betas = [float(b) for b in args.betas.split(",")]
    records = []
    for spec in args.lattices:
        d, L = (int(x) for x in spec.split("x"))
        records += sweep(d, L, args.family, betas, threads=args.threads)
        print(f"done d={d} L={L}", file=sys.stderr)

    text = records_to_csv(records)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)


if __name__ == "__main__":
    main()
