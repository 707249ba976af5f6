"""Print the simplicity verdicts of O and M for every signature, n = 3..N."""

import argparse
from dataclasses import dataclass

from zee2.algebra import Algebra


@dataclass
class Config:
    n_min: int = 3
    n_max: int = 8
    families: tuple = ("O", "M")


def run(cfg: Config) -> list[str]:
    lines = []
    for fam in cfg.families:
        for n in range(cfg.n_min, cfg.n_max + 1):
            cells = ["C:" + ("s" if Algebra.of(fam, n, complex=True).is_simple().computational else "-")]
            for p in range(n + 1):
                v = Algebra.of(fam, n, p).is_simple()
                cells.append(f"{p}:{'s' if v.computational else '-'}")
            lines.append(f"{fam}{n:<2d} " + " ".join(cells))
    return lines


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=Config.n_max)
    args = ap.parse_args()
    print("s = simple, - = not simple; C is the complex algebra, p the number of +1 squares")
    print("\n".join(run(Config(n_max=args.n_max))))
