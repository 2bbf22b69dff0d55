"""Count similarity classes of discrete pseudometrics and compare with p(n)."""

import time
from dataclasses import dataclass

from _config import parse_config

from combsim.intpart import MAX_CLASS_COUNT_N, discrete_classes_count, partition_count


@dataclass(frozen=True)
class Config:
    max_n: int = MAX_CLASS_COUNT_N
    search_up_to: int = 6  # pairwise similarity search is run for n up to this


def main(cfg: Config) -> None:
    print(f"{'n':>3} {'p(n)':>6} {'classes':>8} {'search':>7} {'seconds':>8}")
    for n in range(1, cfg.max_n + 1):
        start = time.perf_counter()
        search = n <= cfg.search_up_to
        count = discrete_classes_count(n, cross_check=search)
        elapsed = time.perf_counter() - start
        p = partition_count(n)
        flag = "" if count == p else "  MISMATCH"
        print(f"{n:>3} {p:>6} {count:>8} {'yes' if search else 'no':>7} {elapsed:>8.3f}{flag}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
