"""Hamiltonian cycles whose (l-1)-th power lies in g1 and spans no bag.

A cycle is stored as a cyclic order of all vertices.  Its (l-1)-th power joins
every pair at cycle distance at most l-1, and its l-cliques are exactly the m
windows of l consecutive vertices.

Repair takes the first pair (v_i, v_{i+d}) of the power that is missing from g1.
It finds a window W* of 2l-2 consecutive vertices, disjoint from the window S
around v_i, such that every S-W* pair is an edge.  It then reverses the arc from
W*'s midpoint back to v_i.  Only S x W* pairs become new neighbours, so the
set of missing pairs strictly shrinks.

Bag removal switches on blue edges from an empty start.  When an edge (a1, a2)
would close a bag, a1 trades places with the center of a (2l-1)-window that is
fully joined to the (2l-1)-window around a1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from baranyai.bags import _bag_masks, disjoint_windows, window_bag_scan, window_masks
from baranyai.decomp import RunReport
from baranyai.errors import BagCheckFailure, ConditionUnmet, DomainError, IntegrityError, RepairFailure
from baranyai.graph import Graph, TripleGraphSystem, iter_bits, mask_of
from baranyai.subsets import (
    KSubsetUniverse,
    build_triple_system,
    reduction_degrees,
    reduction_warnings,
    threshold,
    window_to_parpartition,
)

log = logging.getLogger(__name__)


class CyclicOrder:
    """A cyclic permutation ``sequence`` of ``0..m-1`` with its inverse ``index``."""

    __slots__ = ("sequence", "index")

    def __init__(self, sequence):
        seq = list(sequence)
        m = len(seq)
        idx = [-1] * m
        for pos, v in enumerate(seq):
            if not 0 <= v < m or idx[v] >= 0:
                raise DomainError(f"order is not a permutation of range({m})")
            idx[v] = pos
        self.sequence = seq
        self.index = idx

    @classmethod
    def identity(cls, m: int) -> CyclicOrder:
        return cls(range(m))

    @property
    def m(self) -> int:
        return len(self.sequence)

    def at(self, pos: int) -> int:
        return self.sequence[pos % len(self.sequence)]

    def window(self, start: int, r: int) -> list[int]:
        return [self.at(start + t) for t in range(r)]

    def __eq__(self, other) -> bool:
        return isinstance(other, CyclicOrder) and self.sequence == other.sequence

    def __repr__(self) -> str:
        return f"CyclicOrder(m={self.m})"

    def to_json(self) -> dict:
        return {"m": self.m, "order": list(self.sequence)}

    @classmethod
    def from_json(cls, data: dict) -> CyclicOrder:
        order = cls(data["order"])
        if order.m != data["m"]:
            raise DomainError("order length does not match m")
        return order


@dataclass(frozen=True)
class SegmentWindow:
    start: int
    length: int


@dataclass(frozen=True)
class PowerDefect:
    position: int
    distance: int
    pair: tuple[int, int]


def _check_power(m: int, p: int) -> None:
    if not 1 <= p or 2 * p > m - 1:
        raise DomainError(f"power p={p} outside [1, (m-1)/2] for m={m}")


def power_neighbors(order: CyclicOrder, p: int, v: int) -> set[int]:
    _check_power(order.m, p)
    pos = order.index[v]
    return {order.at(pos + d) for d in range(-p, p + 1) if d}


def power_defects(order: CyclicOrder, g1: Graph, p: int) -> list[PowerDefect]:
    """Pairs at cycle distance <= p missing from g1, ordered by (position, distance)."""
    m = order.m
    _check_power(m, p)
    seq, adj = order.sequence, g1.adj
    out = []
    for i in range(m):
        u = seq[i]
        for d in range(1, p + 1):
            w = seq[(i + d) % m]
            if not adj[u] >> w & 1:
                out.append(PowerDefect(i, d, (u, w)))
    return out


def _missing_pairs(order: CyclicOrder, g1: Graph, p: int) -> set[frozenset]:
    return {frozenset(d.pair) for d in power_defects(order, g1, p)}


def _cyclic_disjoint(m: int, s: int, r: int, c: int, rc: int) -> bool:
    return (s - c) % m >= rc and (c - s) % m >= r


def find_spanning_segments(
    g1: Graph,
    order: CyclicOrder,
    c0: SegmentWindow,
    limit: int,
    length: int | None = None,
) -> list[SegmentWindow]:
    """Windows disjoint from ``c0`` whose every vertex is g1-adjacent to all of ``c0``.

    Windows have ``length`` (default: same as ``c0``) and are scanned by
    increasing start; the scan stops after ``limit`` hits.
    """
    m = order.m
    r = c0.length if length is None else length
    seq, adj = order.sequence, g1.adj
    c0_mask = mask_of(order.window(c0.start, c0.length))
    joined = [adj[v] & c0_mask == c0_mask for v in seq]
    out = []
    run = 0
    # run = number of consecutive joined positions ending at the current one
    # (prefilled over the wrap so windows that cross position 0 are seen)
    for t in range(m - r + 1, m):
        run = run + 1 if joined[t] else 0
    for end in range(m):
        run = run + 1 if joined[end] else 0
        if run < r:
            continue
        start = (end - r + 1) % m
        if _cyclic_disjoint(m, start, r, c0.start % m, c0.length):
            out.append(SegmentWindow(start, r))
    out.sort(key=lambda w: w.start)
    return out[:limit] if limit is not None else out


def _reverse_arc(order: CyclicOrder, i: int, j_end: int) -> CyclicOrder:
    """Keep v_{i+1}..v_{j_end} in place, then walk back from v_i to v_{j_end+1}."""
    m = order.m
    a = (j_end - (i + 1)) % m + 1
    seq = [order.at(i + 1 + t) for t in range(a)] + [order.at(i - t) for t in range(m - a)]
    return CyclicOrder(seq)


def repair_ham_power(g1: Graph, order: CyclicOrder, l: int, report: RunReport | None = None) -> CyclicOrder:
    """Rearrange ``order`` until its (l-1)-th power lies in ``g1``."""
    if l < 2:
        raise DomainError(f"l must be at least 2, got {l}")
    m = order.m
    if m < 4 * l:
        raise DomainError(f"need m >= 4l, got m={m}, l={l}")
    report = report if report is not None else RunReport()
    p = l - 1
    missing = _missing_pairs(order, g1, p)
    report.defect_trace.append(len(missing))
    while True:
        defects = power_defects(order, g1, p)
        if not defects:
            return order
        first = defects[0]
        i = first.position
        report.defects_processed += 1
        s = SegmentWindow((i - l + 2) % m, 2 * l - 2)
        found = find_spanning_segments(g1, order, s, limit=1)
        if not found:
            raise RepairFailure(
                f"no window fully joined to the segment around missing pair {first.pair}",
                defect=first,
                reason="no spanning window",
            )
        j = found[0].start
        order = _reverse_arc(order, i, j + l - 2)
        report.swaps += 1
        new_missing = _missing_pairs(order, g1, p)
        if not new_missing < missing:
            raise AssertionError("rearrangement did not shrink the missing-pair set")
        missing = new_missing
        report.defect_trace.append(len(missing))


def _center_window(pos: int, l: int) -> SegmentWindow:
    return SegmentWindow(pos - l + 1, 2 * l - 1)


def swap_centers(g1: Graph, order: CyclicOrder, a1_pos: int, c_pos: int, l: int) -> CyclicOrder:
    """Exchange the vertices at two positions whose (2l-1)-windows are disjoint and fully joined."""
    m = order.m
    a1_pos, c_pos = a1_pos % m, c_pos % m
    if a1_pos == c_pos:
        return CyclicOrder(order.sequence)
    wa, wc = _center_window(a1_pos, l), _center_window(c_pos, l)
    if not _cyclic_disjoint(m, wa.start % m, wa.length, wc.start % m, wc.length):
        raise DomainError(f"windows around positions {a1_pos} and {c_pos} overlap")
    ma = mask_of(order.window(wa.start, wa.length))
    if any(g1.adj[v] & ma != ma for v in order.window(wc.start, wc.length)):
        raise DomainError(f"windows around positions {a1_pos} and {c_pos} are not fully joined")
    seq = list(order.sequence)
    seq[a1_pos], seq[c_pos] = seq[c_pos], seq[a1_pos]
    return CyclicOrder(seq)


def _windows_with(m: int, pos: int, l: int) -> list[int]:
    return [(pos - t) % m for t in range(l)]


def _local_bag(
    order: CyclicOrder,
    starts: list[int],
    l: int,
    g2: Graph,
    g3: Graph,
    extra: tuple[tuple[int, int], ...],
) -> bool:
    """Whether any window in ``starts`` forms a bag with some disjoint window."""
    m = order.m
    masks = window_masks(order.sequence, l)
    for s in set(starts):
        ms = masks[s]
        reach = 0
        for v in iter_bits(ms):
            reach |= g3.adj[v]
        for u, v in extra:
            if ms >> u & 1:
                reach |= 1 << v
            if ms >> v & 1:
                reach |= 1 << u
        if not reach:
            continue
        for t in range(m):
            if not disjoint_windows(m, l, s, t) or not reach & masks[t]:
                continue
            if _bag_masks(ms, masks[t], g2, g3, extra) is not None:
                return True
    return False


def bagfree_ham_power(
    sys: TripleGraphSystem,
    l: int,
    q: int,
    mode: str = "best_effort",
    audit: bool = False,
    report: RunReport | None = None,
    order: CyclicOrder | None = None,
) -> CyclicOrder:
    """Cyclic order whose (l-1)-th power lies in g1 and has no bag among disjoint l-windows.

    Centers are taken from the first ``q`` fully joined windows around a1.
    With ``audit`` every center is classified and the bad count recorded.
    """
    from baranyai.verify import check_conditions

    if l < 2 or q < 1:
        raise DomainError(f"need l >= 2 and q >= 1, got l={l}, q={q}")
    if mode not in ("guaranteed", "best_effort"):
        raise DomainError(f"unknown mode {mode!r}")
    report = report if report is not None else RunReport()
    m = sys.m
    conds = [c for c in check_conditions(m, l, q, sys.delta1, sys.Delta2, sys.Delta3) if c.name in ("cycle_density", "cycle_sparsity")]
    report.conditions.extend(conds)
    if mode == "guaranteed" and not all(c.holds for c in conds):
        raise ConditionUnmet(conds)

    order = repair_ham_power(sys.g1, order or CyclicOrder.identity(m), l, report)
    g2 = sys.g2
    active = Graph(m)
    for e in sys.g3.edges():
        a1, a2 = e
        report.activations += 1
        starts = _windows_with(m, order.index[a1], l) + _windows_with(m, order.index[a2], l)
        if not _local_bag(order, starts, l, g2, active, (e,)):
            active.add_edge(a1, a2)
            continue
        chosen = None
        for x in (a1, a2):
            x_pos = order.index[x]
            segs = find_spanning_segments(sys.g1, order, _center_window(x_pos, l), limit=q)
            bad = 0
            for seg in segs:
                c_pos = (seg.start + l - 1) % m
                trial = swap_centers(sys.g1, order, x_pos, c_pos, l)
                changed = _windows_with(m, x_pos, l) + _windows_with(m, c_pos, l)
                if _local_bag(trial, changed, l, g2, active, (e,)):
                    bad += 1
                    continue
                if chosen is None:
                    chosen = trial
                if not audit:
                    break
            report.attempts.append(
                {"edge": list(e), "endpoint": x, "candidates": len(segs), "bad": bad, "audited": audit}
            )
            if chosen is not None:
                break
        if chosen is None:
            raise RepairFailure(
                f"every center for blue edge {e} creates a bag",
                defect=e,
                candidates_found=len(segs),
                reason="no non-bad center",
            )
        order = chosen
        report.swaps += 1
        report.bag_swaps += 1
        active.add_edge(a1, a2)

    if power_defects(order, sys.g1, l - 1):
        raise BagCheckFailure("power left g1 during bag removal")
    found = window_bag_scan(order.sequence, l, sys.g2, sys.g3)
    if found:
        raise BagCheckFailure(f"{len(found)} window bags remain, first {found[0]}")
    return order


def build_cyclic_order(n: int, k: int, l: int, alpha, beta, mode: str = "guaranteed", audit: bool = False):
    """Cyclic order of all k-subsets of [n]: l consecutive are disjoint, disjoint windows not close.

    Returns ``(CyclicOrder, subsets_in_order, RunReport)``.
    """
    from baranyai.verify import check_conditions, check_subset_conditions, verify_theorem_output

    alpha, beta = threshold(alpha), threshold(beta)
    if alpha + beta < 1:
        raise DomainError(f"need alpha + beta >= 1, got {alpha + beta}")
    report = RunReport(params={"n": n, "k": k, "l": l, "alpha": str(alpha), "beta": str(beta), "mode": mode})
    report.warnings.extend(reduction_warnings(n, k, alpha, beta))
    m = comb(n, k)
    d1, d2, d3 = reduction_degrees(n, k, alpha, beta)
    conds = [c for c in check_conditions(m, l, m, d1, d2, d3) if c.name in ("cycle_density", "cycle_sparsity")]
    subset_conds = check_subset_conditions(n, k, l, alpha, beta, target="order")
    if mode == "guaranteed" and not all(c.holds for c in conds):
        raise ConditionUnmet(conds + subset_conds)
    report.conditions.extend(subset_conds)

    sys = build_triple_system(n, k, alpha, beta)
    order = bagfree_ham_power(sys, l, q=m, mode="best_effort", audit=audit, report=report)
    u = KSubsetUniverse(n, k)
    subsets = [u.unrank(v) for v in order.sequence]
    result = verify_theorem_output(subsets, alpha, beta, l=l)
    if not result["ok"]:
        raise IntegrityError(f"subset-level verification failed: {result['checks']}")
    log.info("cyclic order: of %d subsets, %d rearrangements", m, report.swaps)
    return order, subsets, report


# name kept for callers of the operation list
theorem5_driver = build_cyclic_order
