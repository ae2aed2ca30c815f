#!/usr/bin/env python
"""Tabulate the derived thresholds (delta1, lbar, nbar, delta3, L_min) over an epsilon grid."""
from __future__ import annotations

import argparse

import numpy as np

from dimerlab.theorems import derive_constants


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--dims", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--eps-min", type=float, default=0.1)
    p.add_argument("--eps-max", type=float, default=3.0)
    p.add_argument("--points", type=int, default=8)
    args = p.parse_args()

    print("d,epsilon,delta1,lbar,nbar,delta3,L_min,N_volume")
    for d in args.dims:
        for eps in np.geomspace(args.eps_min, args.eps_max, args.points):
            c = derive_constants(float(eps), d)
            assert not c.invariant_violations(), c
            print(f"{d},{eps:.6g},{c.delta1:.6g},{c.lbar},{c.nbar},{c.delta3:.6g},{c.L_min},{c.N_volume}")


if __name__ == "__main__":
    main()
