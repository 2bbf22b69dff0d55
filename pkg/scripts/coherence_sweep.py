"""Compare coherence by definition with the monoid-identity test on random mappings."""

import random
import time
from collections import Counter
from dataclasses import dataclass

from _config import parse_config

from combsim.errors import CapExceededError
from combsim.mapkit import SymMapping
from combsim.semigrp import coherence_monoid_check, fiber_semigroup


@dataclass(frozen=True)
class Config:
    instances: int = 500
    max_n: int = 5
    max_symbols: int = 4
    seed: int = 0
    max_elements: int = 100_000


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    tally = Counter()
    sizes = []
    start = time.perf_counter()
    for _ in range(cfg.instances):
        n, k = rng.randint(1, cfg.max_n), rng.randint(1, cfg.max_symbols)
        phi = SymMapping.from_table([[rng.randrange(k) for _ in range(n)] for _ in range(n)])
        try:
            sg = fiber_semigroup(phi, cfg.max_elements)
        except CapExceededError:
            tally["capped"] += 1
            continue
        sizes.append(len(sg))
        for a0 in phi.alphabet:
            c = coherence_monoid_check(phi, a0, closure=sg)
            tally["agree" if c.agree else "disagree"] += 1
            tally["coherent" if c.def_route else "incoherent"] += 1
    elapsed = time.perf_counter() - start
    print(dict(sorted(tally.items())))
    if sizes:
        print(f"closure size max {max(sizes)}, mean {sum(sizes) / len(sizes):.1f}; {elapsed:.1f}s")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
