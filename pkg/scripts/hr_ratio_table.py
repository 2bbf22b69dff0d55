"""Tabulate p(n) against its leading asymptotic estimate."""

from dataclasses import dataclass

from _config import parse_config

from combsim.intpart import hr_ratio, partition_count


@dataclass(frozen=True)
class Config:
    ns: tuple = (1, 5, 10, 20, 50, 100, 200, 500, 1000, 5000)


def main(cfg: Config) -> None:
    print(f"{'n':>6} {'ratio':>10} {'|ratio-1|':>10}  p(n)")
    for n in cfg.ns:
        r = hr_ratio(n)
        p = str(partition_count(n))
        shown = p if len(p) <= 30 else f"{p[:12]}...({len(p)} digits)"
        print(f"{n:>6} {r:>10.6f} {abs(r - 1):>10.6f}  {shown}")


if __name__ == "__main__":
    main(parse_config(Config, __doc__))
