"""Compare the two smoothness routes on every candidate cone up to a rank."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from smoothsym.classify import candidate_colored_cones, data_for_type, supported_types
from smoothsym.rootsys import build_root_system
from smoothsym.symmcheck import exceptional_obstruction, smoothness_conditions, toric_is_smooth, toric_slice


@dataclass(frozen=True)
class SweepConfig:
    max_rank: int = 4
    bound: int | None = None


def sweep(cfg: SweepConfig) -> int:
    disagreements = 0
    total = 0
    for t in supported_types(cfg.max_rank):
        if build_root_system(t).rank > cfg.max_rank:
            continue
        t0 = time.perf_counter()
        n = smooth = 0
        for d in data_for_type(t):
            for cc in candidate_colored_cones(d, bound=cfg.bound):
                if exceptional_obstruction(d, cc) is not None:
                    continue
                a = smoothness_conditions(d, cc).smooth
                b = toric_is_smooth(d, toric_slice(d, cc))
                n += 1
                smooth += a
                if a != b:
                    disagreements += 1
                    print(f"  disagreement on {d.label}: {cc}")
        total += n
        print(f"{t:6} {n:6} candidates {smooth:3} smooth  {time.perf_counter() - t0:6.1f}s", flush=True)
    print(f"total {total} candidates, {disagreements} disagreements")
    return 1 if disagreements else 0


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--bound", type=int, default=None)
    a = p.parse_args()
    return sweep(SweepConfig(a.max_rank, a.bound))


if __name__ == "__main__":
    raise SystemExit(main())
