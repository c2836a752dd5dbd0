#!/usr/bin/env python3
"""Render every fixture to OBJ meshes and JSON reports under a gallery dir."""

import argparse
import os

from bjbi.cli import main as bjbi_main

HERE = os.path.dirname(os.path.abspath(__file__))
FIXTURES = os.path.join(HERE, "..", "fixtures")

JOBS = [
    ("solve", "line_x_normal.toml", ["--grid", "41x41"]),
    ("solve", "line_y_normal.toml", ["--grid", "41x41"]),
    ("solve", "boost_spacelike.toml", ["--grid", "41x41"]),
    ("solve", "curved_strip.toml", ["--domain", "diamond", "2", "--grid", "81x81"]),
    ("classify", "line_x_normal.toml", []),
    ("classify", "line_y_normal.toml", []),
    ("classify", "boost_spacelike.toml", []),
    ("bc", "bc_identity.toml", []),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="gallery")
    args = ap.parse_args()

    for command, fixture, extra in JOBS:
        name = f"{command}_{os.path.splitext(fixture)[0]}"
        out = os.path.join(args.out, name)
        code = bjbi_main([command, os.path.join(FIXTURES, fixture), *extra, "--out", out])
        print(f"{name}: exit {code} -> {out}/")


if __name__ == "__main__":
    main()
