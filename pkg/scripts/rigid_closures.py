"""Closure sizes and band structure for strongly rigid metrics with distinct distances."""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from _config import parse_config

from combsim.pmetric import Pseudometric, is_strongly_rigid
from combsim.semigrp import fiber_semigroup, rigid_structure_check


@dataclass(frozen=True)
class Config:
    ns: tuple = (2, 3, 4, 5)


def rigid_metric(n: int) -> Pseudometric:
    # distinct values in [1, 4/3] always satisfy the triangle inequality
    pairs = list(combinations(range(n), 2))
    m = [[Fraction(0)] * n for _ in range(n)]
    for i, (x, y) in enumerate(pairs):
        m[x][y] = m[y][x] = 1 + Fraction(i, 3 * max(len(pairs) - 1, 1))
    return Pseudometric(n, tuple(tuple(r) for r in m))


def main(cfg: Config) -> None:
    print(f"{'n':>3} {'rigid':>6} {'order':>6} {'groups':>7}  failing conditions")
    for n in cfg.ns:
        d = rigid_metric(n)
        sg = fiber_semigroup(d.as_mapping())
        rep = rigid_structure_check(sg)
        failing = [k for k, v in rep.conditions.items() if not v]
        print(f"{n:>3} {str(bool(is_strongly_rigid(d))):>6} {len(sg):>6} {rep.omega:>7}  {failing or '-'}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
