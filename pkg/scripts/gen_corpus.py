#!/usr/bin/env python3
"""Materialize the bundled proof and context corpus under corpus/.

Rewrites every file from scratch; safe to rerun.
"""
import argparse
import pathlib
import sys

from lad.corpus import write_corpus


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument(
        "--root",
        type=pathlib.Path,
        default=pathlib.Path(__file__).resolve().parent.parent / "corpus",
        help="directory to write into (default: <repo>/corpus)",
    )
    args = ap.parse_args()
    paths = write_corpus(args.root)
    for rel in paths:
        print(rel)
    print(f"{len(paths)} files under {args.root}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
