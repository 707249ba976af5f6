"""Run the full Parker-loop factor-set verification and report timings."""

import argparse
import json
import time
from dataclasses import dataclass

from zee2 import loops


@dataclass
class Config:
    samples: int = 100_000
    seed: int = 20240607
    threads: int = 1


def run(cfg: Config) -> dict:
    t0 = time.perf_counter()
    code = loops.golay_code()
    L = loops.parker_factor_set()
    rep = loops.verify_factor_set(code, L, samples=cfg.samples, seed=cfg.seed, threads=cfg.threads)
    m = loops.moufang_check(L, trials=cfg.samples, seed=cfg.seed)
    return {
        "factor_set": rep.to_json(),
        "moufang_ok": m.ok,
        "weight_distribution": code.weight_distribution(),
        "golay_intersections": {k: sorted(v) for k, v in loops.golay_intersections().items()},
        "seconds": round(time.perf_counter() - t0, 2),
    }


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=Config.samples)
    ap.add_argument("--seed", type=int, default=Config.seed)
    ap.add_argument("--threads", type=int, default=Config.threads)
    a = ap.parse_args()
    print(json.dumps(run(Config(a.samples, a.seed, a.threads)), indent=2))
