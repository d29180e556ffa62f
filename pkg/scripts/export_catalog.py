"""Write the reference catalog as .scf files plus a text table."""

from __future__ import annotations

import argparse
import re
from dataclasses import dataclass
from pathlib import Path

from smoothsym.classify import reference_catalog, supported_types
from smoothsym.scf import document_from, print_scf


@dataclass(frozen=True)
class ExportConfig:
    out_dir: Path
    max_rank: int = 6


def slug(text: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", text.lower()).strip("_")


def export(cfg: ExportConfig) -> None:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    rows = []
    counts: dict[str, int] = {}
    for e in reference_catalog(cfg.max_rank):
        counts[e.type_label] = counts.get(e.type_label, 0) + 1
        name = f"{slug(e.type_label)}_{counts[e.type_label]}_{slug(e.label)}.scf"
        doc = document_from(e.datum, e.fan.maximal_cones, [f"# {e.type_label}: {e.label}"])
        (cfg.out_dir / name).write_text(print_scf(doc))
        rows.append(f"{e.type_label:7} {e.orbit_count} orbit(s)  {e.label:40} {name}")
    for t in supported_types(cfg.max_rank):
        if t not in counts:
            rows.append(f"{t:7} none")
    (cfg.out_dir / "catalog.txt").write_text("\n".join(rows) + "\n")
    print("\n".join(rows))


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("out_dir", type=Path)
    p.add_argument("--max-rank", type=int, default=6)
    a = p.parse_args()
    export(ExportConfig(a.out_dir, a.max_rank))


if __name__ == "__main__":
    main()
