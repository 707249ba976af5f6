"""Exhaustive search for real graded isomorphisms between signatures at n = 3 or 4."""

import argparse
import itertools
from dataclasses import dataclass

from zee2.twist import find_graded_isomorphism, make_twist, negative_square_count


@dataclass
class Config:
    family: str = "O"
    n: int = 3


def run(cfg: Config) -> list[str]:
    n = cfg.n
    out = [f"{cfg.family}_{{{p},{n - p}}}: {negative_square_count(make_twist(cfg.family, n, p))} "
           "basis elements square to -1" for p in range(n + 1)]
    for p1, p2 in itertools.combinations(range(n + 1), 2):
        T = find_graded_isomorphism(make_twist(cfg.family, n, p1), make_twist(cfg.family, n, p2))
        lab = lambda p: f"{cfg.family}_{{{p},{n - p}}}"
        out.append(f"{lab(p1)} ~ {lab(p2)}: " + (" ".join(T.to_strings()) if T else "none"))
    return out


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", choices=["O", "M", "Cl"], default="O")
    ap.add_argument("--n", type=int, default=3)
    a = ap.parse_args()
    print("\n".join(run(Config(a.family, a.n))))
