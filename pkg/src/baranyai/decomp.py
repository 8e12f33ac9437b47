"""Almost-l-decompositions of g1 (floor(m/l) disjoint l-cliques) that contain no bag.

The construction runs in two phases.  Defect repair starts from consecutive id
blocks and, for each non-adjacent pair (a1, a2) inside a block, swaps a1 with
a vertex b1 from another block such that b1 sees all of a1's block and a1
sees all of b1's block.  Each swap removes every defect through a1 and adds
none.  Bag removal then switches on blue edges one at a time, starting from
no blue edges.  When switching on (a1, a2) would create a bag, a1 is first
swapped with a candidate that leaves every block pair bag-free.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction

from baranyai.bags import _bag_masks, family_bag_scan
from baranyai.errors import BagCheckFailure, ConditionUnmet, DomainError, IntegrityError, RepairFailure
from baranyai.graph import Graph, TripleGraphSystem, iter_bits, mask_of
from baranyai.subsets import (
    KSubsetUniverse,
    ParpartitionFamily,
    build_triple_system,
    family_to_parpartitions,
    reduction_warnings,
    threshold,
)

log = logging.getLogger(__name__)


@dataclass
class CliqueFamily:
    m: int
    l: int
    blocks: list[tuple[int, ...]]

    def owner(self) -> list[int]:
        """Block index of every vertex, -1 for unassigned leftovers."""
        own = [-1] * self.m
        for i, b in enumerate(self.blocks):
            for v in b:
                own[v] = i
        return own

    def leftover(self) -> list[int]:
        return [v for v, o in enumerate(self.owner()) if o < 0]

    def to_json(self) -> dict:
        return {"m": self.m, "l": self.l, "blocks": sorted(list(b) for b in self.blocks)}

    @classmethod
    def from_json(cls, data: dict) -> CliqueFamily:
        return cls(data["m"], data["l"], [tuple(sorted(b)) for b in data["blocks"]])


@dataclass(frozen=True)
class Defect:
    block: int
    pair: tuple[int, int]


@dataclass(frozen=True)
class SwapCandidate:
    b1: int
    host: int


@dataclass
class RunReport:
    params: dict = field(default_factory=dict)
    swaps: int = 0
    defects_processed: int = 0
    activations: int = 0
    bag_swaps: int = 0
    defect_trace: list[int] = field(default_factory=list)
    attempts: list[dict] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    conditions: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "params": self.params,
            "swaps": self.swaps,
            "defects_processed": self.defects_processed,
            "activations": self.activations,
            "bag_swaps": self.bag_swaps,
            "defect_trace": self.defect_trace,
            "attempts": self.attempts,
            "warnings": self.warnings,
            "conditions": [c.to_json() for c in self.conditions],
        }


def initial_decomposition(m: int, l: int) -> CliqueFamily:
    if l < 2:
        raise DomainError(f"block size must be at least 2, got {l}")
    if m < l:
        raise DomainError(f"need m >= l, got m={m}, l={l}")
    return CliqueFamily(m, l, [tuple(range(i * l, (i + 1) * l)) for i in range(m // l)])


def block_defects(g1: Graph, block) -> list[tuple[int, int]]:
    bs = sorted(block)
    return [(a, b) for i, a in enumerate(bs) for b in bs[i + 1:] if not g1.has_edge(a, b)]


def find_swap_candidates(
    g1: Graph,
    family: CliqueFamily,
    a1_block: int,
    a1: int,
    clean_only: bool = True,
) -> list[SwapCandidate]:
    """Vertices b1 outside block ``a1_block`` that b1 <-> a1 can be exchanged with.

    b1 must be adjacent to every vertex of a1's block and a1 to every vertex of
    b1's block.  With ``clean_only`` the donor block must have no defects.
    """
    a_block = family.blocks[a1_block]
    if a1 not in a_block:
        raise DomainError(f"{a1} is not in block {a1_block}")
    a_mask = mask_of(a_block)
    adj = g1.adj
    out = []
    for host, b_block in enumerate(family.blocks):
        if host == a1_block:
            continue
        b_mask = mask_of(b_block)
        if adj[a1] & b_mask != b_mask:
            continue
        if clean_only and block_defects(g1, b_block):
            continue
        out.extend(SwapCandidate(b1, host) for b1 in b_block if adj[b1] & a_mask == a_mask)
    out.sort(key=lambda c: c.b1)
    return out


def _swap(family: CliqueFamily, a_idx: int, a1: int, b_idx: int, b1: int) -> None:
    family.blocks[a_idx] = tuple(sorted([v for v in family.blocks[a_idx] if v != a1] + [b1]))
    family.blocks[b_idx] = tuple(sorted([v for v in family.blocks[b_idx] if v != b1] + [a1]))


def repair_decomposition(g1: Graph, family: CliqueFamily, report: RunReport | None = None) -> CliqueFamily:
    """Swap vertices between blocks until every block is a clique of ``g1``.

    Defects are handled in (block index, pair) order; the smaller endpoint is
    swapped out first, then the larger.  Donors come from defect-free blocks
    when possible, otherwise from any other block (a swap still strictly
    lowers the defect total).
    """
    report = report if report is not None else RunReport()
    fam = CliqueFamily(family.m, family.l, [tuple(sorted(b)) for b in family.blocks])
    defects = {i: block_defects(g1, b) for i, b in enumerate(fam.blocks)}
    defects = {i: d for i, d in defects.items() if d}
    total = sum(len(d) for d in defects.values())
    report.defect_trace.append(total)
    while defects:
        a_idx = min(defects)
        pair = defects[a_idx][0]
        report.defects_processed += 1
        for a1 in pair:
            cands = find_swap_candidates(g1, fam, a_idx, a1, clean_only=True)
            if not cands:
                cands = find_swap_candidates(g1, fam, a_idx, a1, clean_only=False)
            if cands:
                break
        else:
            raise RepairFailure(
                f"no swap candidate for defect {pair} in block {a_idx}",
                defect=Defect(a_idx, pair),
                candidates_found=0,
            )
        c = cands[0]
        _swap(fam, a_idx, a1, c.host, c.b1)
        report.swaps += 1
        for idx in (a_idx, c.host):
            d = block_defects(g1, fam.blocks[idx])
            if d:
                defects[idx] = d
            else:
                defects.pop(idx, None)
        new_total = sum(len(d) for d in defects.values())
        if new_total >= total:
            raise AssertionError(f"defect count did not drop ({total} -> {new_total})")
        total = new_total
        report.defect_trace.append(total)
    return fam


def _blocks_bag_free_after_swap(
    fam: CliqueFamily,
    changed: tuple[int, int],
    g2: Graph,
    g3: Graph,
    extra: tuple[tuple[int, int], ...],
) -> bool:
    masks = [mask_of(b) for b in fam.blocks]
    for i in changed:
        mi = masks[i]
        reach = 0
        for v in iter_bits(mi):
            reach |= g3.adj[v]
        for u, v in extra:
            if mi >> u & 1:
                reach |= 1 << v
            if mi >> v & 1:
                reach |= 1 << u
        for j, mj in enumerate(masks):
            if j == i or not reach & mj:
                continue
            if _bag_masks(mi, mj, g2, g3, extra) is not None:
                return False
    return True


def bagfree_decomposition(
    sys: TripleGraphSystem,
    l: int,
    mode: str = "best_effort",
    audit: bool = False,
    report: RunReport | None = None,
) -> CliqueFamily:
    """Almost-l-decomposition of ``sys.g1`` in which no two blocks form a bag.

    With ``audit`` every swap candidate is classified (instead of stopping at
    the first good one) and per-activation bad counts land in ``report.attempts``.
    """
    from baranyai.verify import check_conditions

    report = report if report is not None else RunReport()
    if mode not in ("guaranteed", "best_effort"):
        raise DomainError(f"unknown mode {mode!r}")
    m = sys.m
    conds = [c for c in check_conditions(m, l, 1, sys.delta1, sys.Delta2, sys.Delta3) if c.name in ("family_density", "family_sparsity")]
    report.conditions.extend(conds)
    if mode == "guaranteed" and not all(c.holds for c in conds):
        raise ConditionUnmet(conds)

    fam = repair_decomposition(sys.g1, initial_decomposition(m, l), report)
    g2 = sys.g2
    active = Graph(m)
    for e in sys.g3.edges():
        a1, a2 = e
        report.activations += 1
        own = fam.owner()
        ia, ib = own[a1], own[a2]
        if ia < 0 or ib < 0 or ia == ib:
            active.add_edge(a1, a2)
            continue
        if _bag_masks(mask_of(fam.blocks[ia]), mask_of(fam.blocks[ib]), g2, active, (e,)) is None:
            active.add_edge(a1, a2)
            continue
        chosen = None
        for x in (a1, a2):
            x_idx = own[x]
            cands = find_swap_candidates(sys.g1, fam, x_idx, x, clean_only=True)
            bad = 0
            for c in cands:
                trial = CliqueFamily(m, l, list(fam.blocks))
                _swap(trial, x_idx, x, c.host, c.b1)
                if not _blocks_bag_free_after_swap(trial, (x_idx, c.host), g2, active, (e,)):
                    bad += 1
                    continue
                if chosen is None:
                    chosen = (x, x_idx, c)
                if not audit:
                    break
            report.attempts.append(
                {"edge": list(e), "endpoint": x, "candidates": len(cands), "bad": bad, "audited": audit}
            )
            if chosen is not None:
                break
        if chosen is None:
            raise RepairFailure(
                f"every swap candidate for blue edge {e} creates a bag",
                defect=e,
                candidates_found=len(cands),
                reason="all candidates bad",
            )
        x, x_idx, c = chosen
        _swap(fam, x_idx, x, c.host, c.b1)
        report.swaps += 1
        report.bag_swaps += 1
        active.add_edge(a1, a2)

    leftovers = [i for i, b in enumerate(fam.blocks) if block_defects(sys.g1, b)]
    if leftovers:
        raise BagCheckFailure(f"blocks {leftovers} are not cliques after bag removal")
    found = family_bag_scan(fam.blocks, sys.g2, sys.g3)
    if found:
        raise BagCheckFailure(f"{len(found)} bags remain, first {found[0]}")
    return fam


def build_parpartition_family(n: int, k: int, l: int, alpha, beta, mode: str = "guaranteed", audit: bool = False):
    """floor(C(n,k)/l) parpartitions, no subset reused, no close pair.

    Returns ``(ParpartitionFamily, RunReport)``.  The result is re-checked at
    the subset level before being returned.
    """
    from baranyai.verify import check_conditions, check_subset_conditions, verify_theorem_output

    alpha, beta = threshold(alpha), threshold(beta)
    report = RunReport(params={"n": n, "k": k, "l": l, "alpha": str(alpha), "beta": str(beta), "mode": mode})
    subset_conds = check_subset_conditions(n, k, l, alpha, beta, target="family")
    report.warnings.extend(reduction_warnings(n, k, alpha, beta))
    if mode == "guaranteed":
        from math import comb

        from baranyai.subsets import reduction_degrees

        d1, d2, d3 = reduction_degrees(n, k, alpha, beta)
        conds = [c for c in check_conditions(comb(n, k), l, 1, d1, d2, d3) if c.name in ("family_density", "family_sparsity")]
        required = conds + [c for c in subset_conds if c.name == "k^2*l<=n/3"]
        if not all(c.holds for c in required):
            raise ConditionUnmet(required + [c for c in subset_conds if c not in required])
    report.conditions.extend(subset_conds)

    sys = build_triple_system(n, k, alpha, beta)
    fam = bagfree_decomposition(sys, l, mode="best_effort", audit=audit, report=report)
    family = family_to_parpartitions(KSubsetUniverse(n, k), fam.blocks, alpha, beta)
    family.parpartitions.sort()
    result = verify_theorem_output(family, alpha, beta)
    if not result["ok"]:
        raise IntegrityError(f"subset-level verification failed: {result['checks']}")
    log.info("parpartition family: %d parpartitions, %d swaps", len(family.parpartitions), report.swaps)
    return family, report


# name kept for callers of the operation list
theorem2_driver = build_parpartition_family
