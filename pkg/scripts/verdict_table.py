"""Aperiodicity and definiteness of rN + s recognizers across bases.

    python scripts/verdict_table.py --sets 0:2,0:6,1:4 --bases 2-12
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from starfree import numeration as nm
from starfree import setspec as ss


@dataclass
class TableConfig:
    sets: tuple = ((0, 2), (0, 6), (1, 4), (2, 5), (3, 4), (0, 12), (5, 18))
    bases: tuple = tuple(range(2, 13))


def parse_args() -> TableConfig:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sets", help="comma separated r:s pairs")
    parser.add_argument("--bases", help="range lo-hi or comma separated list")
    args = parser.parse_args()
    config = TableConfig()
    if args.sets:
        config.sets = tuple(tuple(int(v) for v in item.split(":")) for item in args.sets.split(","))
    if args.bases:
        if "-" in args.bases:
            lo, hi = map(int, args.bases.split("-"))
            config.bases = tuple(range(lo, hi + 1))
        else:
            config.bases = tuple(int(v) for v in args.bases.split(","))
    return config


def cell(r: int, s: int, q: int) -> str:
    report = ss.star_free_in_base(ss.progression(r, s), nm.PositionalBase(q))
    if report.definite:
        return "D"
    return "A" if report.aperiodic else "."


def main():
    config = parse_args()
    print("D definite, A aperiodic only, . not aperiodic")
    print(f"{'set':>10} " + " ".join(f"{q:>3}" for q in config.bases))
    for r, s in config.sets:
        row = " ".join(f"{cell(r, s, q):>3}" for q in config.bases)
        name = f"{s}N+{r}" if r else f"{s}N"
        print(f"{name:>10} {row}")


if __name__ == "__main__":
    main()
