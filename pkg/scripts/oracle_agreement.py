"""Monoid aperiodicity verdict against the brute-force pumping oracle on
seeded random automata.

    python scripts/oracle_agreement.py --count 1000 --seed 3
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from oracles import pumping_oracle  # noqa: E402
from starfree import automata as fa  # noqa: E402


@dataclass
class AgreementConfig:
    count: int = 200
    seed: int = 5
    max_states: int = 6
    max_letters: int = 3


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in vars(AgreementConfig()).items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=int, default=default)
    config = AgreementConfig(**vars(parser.parse_args()))

    rng = random.Random(config.seed)
    agree = aperiodic = 0
    start = time.perf_counter()
    for i in range(config.count):
        dfa = fa.random_dfa(rng, rng.randint(1, config.max_states),
                            rng.randint(1, config.max_letters))
        verdict = fa.is_aperiodic(dfa).aperiodic
        aperiodic += verdict
        if verdict == pumping_oracle(dfa):
            agree += 1
        else:
            print(f"disagreement on automaton {i}: {fa.dumps(dfa)}")
    elapsed = time.perf_counter() - start
    print(f"{agree}/{config.count} agree ({aperiodic} aperiodic) in {elapsed:.2f}s")
    return 0 if agree == config.count else 1


if __name__ == "__main__":
    sys.exit(main())
