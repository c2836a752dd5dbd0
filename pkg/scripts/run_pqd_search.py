#!/usr/bin/env python3
"""Randomized search for strips whose Björling solution is certified a graph.

The spacelike boost family always qualifies; whether any timelike-variant
strip does is an open empirical question, so the summary reports absence
per variant instead of asserting anything.
"""

import argparse

from bjbi.graphicality import search_pqd_strips
from bjbi.strips import TIMELIKE_SURFACE


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budget", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--criterion", choices=["pqd", "p_matrix"], default="pqd")
    args = ap.parse_args()

    found = search_pqd_strips(args.budget, args.seed, criterion=args.criterion)
    by_variant = {}
    for strip in found:
        by_variant.setdefault(strip.variant, []).append(strip)

    print(f"budget {args.budget}, seed {args.seed}, criterion {args.criterion}: "
          f"{len(found)} certified strips")
    for variant, strips in sorted(by_variant.items()):
        print(f"\n{variant}: {len(strips)} hits")
        for strip in strips[:10]:
            cx, cy, cz = (p.coeffs for p in strip.curve.components)
            nx, ny, nz = (p.coeffs for p in strip.normal.components)
            print(f"  curve  x{list(cx)} y{list(cy)} z{list(cz)}")
            print(f"  normal x{list(nx)} y{list(ny)} z{list(nz)}")
    if TIMELIKE_SURFACE not in by_variant:
        print(f"\nno {TIMELIKE_SURFACE} strip passed the certificate in this run "
              "(reported, not asserted)")


if __name__ == "__main__":
    main()
