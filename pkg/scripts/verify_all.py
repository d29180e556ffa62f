"""Enumerate every supported type, compare with the catalog and time it.

Also checks that doubling the coefficient bound and switching off the
pruning leave each result unchanged (the latter only up to --full-rank).
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from smoothsym.classify import SearchConfig, enumerate_picard_one, supported_types, verify_against_catalog
from smoothsym.rootsys import build_root_system


@dataclass(frozen=True)
class VerifyConfig:
    max_rank: int = 6
    full_rank: int = 3


def keys(label: str, cfg: SearchConfig) -> set:
    return {e.key() for e in enumerate_picard_one(label, cfg)}


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-rank", type=int, default=6)
    p.add_argument("--full-rank", type=int, default=3, help="largest rank for the unpruned comparison")
    a = p.parse_args()
    cfg = VerifyConfig(a.max_rank, a.full_rank)
    ok = True
    for t in supported_types(cfg.max_rank):
        rank = build_root_system(t).rank
        t0 = time.perf_counter()
        rep = verify_against_catalog(t)
        base = {e.key() for e in rep.enumerated}
        stable = base == keys(t, SearchConfig(bound=2 * (rank + 2)))
        full = "-" if rank > cfg.full_rank else str(base == keys(t, SearchConfig(prune=False)))
        print(f"{rep.summary():40} doubled-bound {stable}  unpruned {full}  {time.perf_counter() - t0:5.1f}s", flush=True)
        for x in rep.extra:
            print("  extra:", x)
        for m in rep.missing:
            print("  missing:", m)
        ok = ok and rep.match and stable and full != "False"
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
