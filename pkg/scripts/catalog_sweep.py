#!/usr/bin/env python3
"""Analyze every catalog entry and compare with its stored expectations.

Prints one row per entry (ramification invariants, ratio R, total curvature,
classification) and a trailing mismatch count. Exit status is the number of
mismatching entries, capped at 1.
"""
from __future__ import annotations

import argparse
import json
import math
import sys

from minsurf import catalog
from minsurf.cli import jsonable
from minsurf.gauss import FlatGaussMap, ramification_profile
from minsurf.periods import classify, period_condition
from minsurf.surface import total_curvature
from minsurf.theorems import ratio_of, verify
from minsurf.weierstrass import WData3, WData4


def sweep_entry(e) -> dict:
    d = e.data
    row = {"name": e.name, "kind": d.kind}
    cls = classify(d)
    row["classification"] = cls.tag
    row["period"] = period_condition(d).passed
    if isinstance(d, WData3):
        try:
            p = ramification_profile(d.g, d.domain)
            R = ratio_of(d)
            row |= {"D_g": p.D_g, "nu_g": p.nu_g, "l": p.l, "R": None if R.nonhyperbolic else R.value}
        except FlatGaussMap:
            pass
        row["tau"] = total_curvature(d).value if cls.tag == "algebraic" else None
    elif isinstance(d, WData4):
        info = verify(d).info
        row |= {k: info[k].value for k in ("R1", "R2") if k in info}
        row["nu_g1"] = ramification_profile(d.g1, d.domain).nu_g
    return row


def mismatches(row, expected) -> list[str]:
    out = []
    for key, want in expected.items():
        if key not in row or want is None:
            continue
        got = row[key]
        if isinstance(want, float) and got is not None and math.isfinite(want):
            ok = abs(got - want) <= 0.01 * abs(want)
        else:
            ok = got == want
        if not ok:
            out.append(f"{key}: got {got}, expected {want}")
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="emit rows as JSON")
    args = ap.parse_args(argv)

    rows, bad = [], 0
    for e in catalog.list_entries():
        if not e.analyzable or e.partner is not None:
            continue
        row = sweep_entry(e)
        row["mismatches"] = mismatches(row, e.expected)
        bad += bool(row["mismatches"])
        rows.append(row)

    if args.json:
        print(json.dumps(jsonable(rows), indent=2))
    else:
        cols = ["name", "kind", "classification", "period", "D_g", "nu_g", "R", "R1", "R2", "tau"]
        width = {"name": -24, "classification": 17}
        fmt = lambda c, v: f"{v:<{-width[c]}}" if width.get(c, 8) < 0 else f"{v:>{width.get(c, 8)}}"
        print(" ".join(fmt(c, c) for c in cols))
        for r in rows:
            cells = []
            for c in cols:
                v = r.get(c, "")
                v = f"{v:.4f}" if isinstance(v, float) and math.isfinite(v) else str(v if v is not None else "-")
                cells.append(fmt(c, v))
            print(" ".join(cells))
            for m in r["mismatches"]:
                print(f"    mismatch {m}")
        print(f"{len(rows)} entries, {bad} with mismatches")
    return min(bad, 1)


if __name__ == "__main__":
    sys.exit(main())
