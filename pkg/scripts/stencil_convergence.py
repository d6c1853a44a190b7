#!/usr/bin/env python3
"""Closed-form curvature against finite differences of log(lambda) as the step shrinks.

The plain five-point stencil carries an O(h^2) truncation term, so its error
should drop by about 4 per halving until roundoff takes over; the Richardson
combination removes that term.
"""
from __future__ import annotations

import argparse

from minsurf import catalog
from minsurf.surface import curvature_fd, curvature_formula


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--entry", default="voss")
    ap.add_argument("--z", default="0.4+0.7j")
    args = ap.parse_args(argv)
    d = catalog.get(args.entry).data
    z = complex(args.z)
    k = float(curvature_formula(d, z))
    print(f"{args.entry} at z={z}: K = {k:.12g}")
    print(f"{'step':>8} {'plain rel err':>15} {'ratio':>7} {'richardson rel err':>20}")
    prev = None
    for j in range(1, 9):
        h = 2.0 ** -j * 1e-1
        e = abs(curvature_fd(d, z, h) - k) / abs(k)
        er = abs(curvature_fd(d, z, h, richardson=True) - k) / abs(k)
        ratio = f"{prev / e:7.2f}" if prev else " " * 7
        print(f"{h:8.1e} {e:15.3e} {ratio} {er:20.3e}")
        prev = e


if __name__ == "__main__":
    main()
