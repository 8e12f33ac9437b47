"""Bag-free decompositions on a batch of seeded synthetic systems.

    python scripts/run_decomposition.py --m 243 --delta 203 --d2 2 --d3 2 --seeds 25
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass, fields

from baranyai.decomp import RunReport, bagfree_decomposition
from baranyai.errors import RepairFailure
from baranyai.synth import gen_system
from baranyai.verify import audit_counts, verify_block_bags, verify_decomposition


@dataclass
class DecompositionConfig:
    m: int = 243
    l: int = 2
    delta: int = 203
    d2: int = 2
    d3: int = 2
    seeds: int = 25
    first_seed: int = 0
    mode: str = "guaranteed"
    audit: bool = True
    samples: int = 100
    out: str = ""


def run(cfg: DecompositionConfig) -> list[dict]:
    rows = []
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        sys_ = gen_system(cfg.m, cfg.delta, cfg.d2, cfg.d3, seed)
        report = RunReport()
        t0 = time.perf_counter()
        try:
            fam = bagfree_decomposition(sys_, cfg.l, mode=cfg.mode, audit=cfg.audit, report=report)
        except RepairFailure as exc:
            rows.append({"seed": seed, "ok": False, "error": str(exc)})
            continue
        elapsed = time.perf_counter() - t0
        audit = audit_counts(sys_, fam.blocks, cfg.l, samples=cfg.samples, seed=seed, report=report)
        ok = verify_decomposition(sys_.g1, fam.blocks, cfg.l)["ok"] and verify_block_bags(fam.blocks, sys_.g2, sys_.g3)["ok"]
        rows.append({
            "seed": seed,
            "ok": ok,
            "blocks": len(fam.blocks),
            "swaps": report.swaps,
            "bag_swaps": report.bag_swaps,
            "seconds": round(elapsed, 3),
            "audit": audit.to_json(),
        })
    return rows


def parse_args() -> DecompositionConfig:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in fields(DecompositionConfig):
        if f.type == "bool":
            p.add_argument(f"--{f.name}", action=argparse.BooleanOptionalAction, default=f.default)
        else:
            p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return DecompositionConfig(**vars(p.parse_args()))


def main() -> None:
    cfg = parse_args()
    rows = run(cfg)
    for r in rows:
        if not r["ok"]:
            print(f"seed {r['seed']:>3}  FAIL  {r.get('error', 'verification failed')}")
            continue
        a = r["audit"]
        print(
            f"seed {r['seed']:>3}  blocks {r['blocks']}  swaps {r['swaps']:>3} ({r['bag_swaps']} bag)"
            f"  min cand {a['min_measured']} (>= {a['bound']})  max bad {a['max_bad']} (<= {a['bad_bound']})"
            f"  {r['seconds']:.2f}s"
        )
    print(f"{sum(r['ok'] for r in rows)}/{len(rows)} certified")
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "runs": rows}, fh, indent=2, sort_keys=True)


if __name__ == "__main__":
    main()
