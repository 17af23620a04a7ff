"""Four-way classification of a handful of sets, one line each.

    python scripts/classification_table.py --probes 2,3,4,6
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from starfree import numeration as nm
from starfree import setspec as ss
from starfree.logic import library as lib


@dataclass
class ClassifyConfig:
    probes: tuple = tuple(range(2, 13))
    horizon: int = ss.DEFAULT_HORIZON


def examples() -> dict:
    b2 = nm.PositionalBase(2)
    return {
        "{1, 5, 9}": ss.finite_set([1, 5, 9]),
        "2N": ss.progression(0, 2),
        "6N": ss.progression(0, 6),
        "4N+1": ss.progression(1, 4),
        "18N+5": ss.progression(5, 18),
        "powers of 2": ss.FormulaSpec(lib.SINGLE_ONE_NUM, b2),
        "binary 1+0*": ss.FormulaSpec(lib.ONES_THEN_ZEROS_NUM, b2),
    }


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--probes", help="comma separated probe bases")
    parser.add_argument("--horizon", type=int)
    args = parser.parse_args()
    config = ClassifyConfig()
    if args.probes:
        config.probes = tuple(int(v) for v in args.probes.split(","))
    if args.horizon:
        config.horizon = args.horizon

    for name, spec in examples().items():
        category = ss.classify(spec, config.probes, config.horizon)
        good = [p.base for p in category.evidence if p.available and p.aperiodic]
        extra = f" P={category.radical}" if category.radical else ""
        print(f"{name:>14}  tag {category.tag}{extra}  star-free in {good}")
        for note in category.notes:
            print(f"{'':>16}{note}")


if __name__ == "__main__":
    main()
