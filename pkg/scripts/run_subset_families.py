"""End-to-end runs on real k-subset universes.

Builds a parpartition family and a cyclic order, checks both at the subset
level and prints the hypothesis table for each.

    python scripts/run_subset_families.py --n 24 --k 2 --l 2
"""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, fields

from baranyai.decomp import build_parpartition_family
from baranyai.errors import ConditionUnmet, RepairFailure
from baranyai.hampower import build_cyclic_order


@dataclass
class SubsetRunConfig:
    n: int = 24
    k: int = 2
    l: int = 2
    alpha: str = "1/2"
    beta: str = "1/2"
    order_n: int = 10
    mode: str = "best_effort"


def parse_args() -> SubsetRunConfig:
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    for f in fields(SubsetRunConfig):
        p.add_argument(f"--{f.name}", type=type(f.default), default=f.default)
    return SubsetRunConfig(**vars(p.parse_args()))


def show(report) -> None:
    for c in report.conditions:
        j = c.to_json()
        print(f"    {j['name']:<22} {j['lhs']:>10} {j['relation']} {j['rhs']:<10} {j['holds']}")
    for w in report.warnings:
        print(f"    warning: {w}")


def main() -> None:
    cfg = parse_args()
    t0 = time.perf_counter()
    try:
        family, report = build_parpartition_family(cfg.n, cfg.k, cfg.l, cfg.alpha, cfg.beta, mode=cfg.mode)
        print(f"family n={cfg.n} k={cfg.k} l={cfg.l}: {len(family.parpartitions)} parpartitions,"
              f" {report.swaps} swaps, {time.perf_counter() - t0:.2f}s")
        show(report)
    except (ConditionUnmet, RepairFailure) as exc:
        print(f"family n={cfg.n} k={cfg.k} l={cfg.l}: {type(exc).__name__}: {exc}")

    t0 = time.perf_counter()
    try:
        _, subsets, report = build_cyclic_order(cfg.order_n, cfg.k, cfg.l, cfg.alpha, cfg.beta, mode=cfg.mode)
        print(f"cyclic order n={cfg.order_n} k={cfg.k} l={cfg.l}: {len(subsets)} subsets,"
              f" {report.swaps} moves, {time.perf_counter() - t0:.2f}s")
        print("    " + " ".join("".join(map(str, s)) for s in subsets[:12]) + " ...")
        show(report)
    except (ConditionUnmet, RepairFailure) as exc:
        print(f"cyclic order n={cfg.order_n}: {type(exc).__name__}: {exc}")


if __name__ == "__main__":
    main()
