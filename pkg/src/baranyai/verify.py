"""Independent certification of constructed artifacts.

Nothing here reuses the bitset machinery of the constructions: checks work on
plain Python sets of edges so that a bug in the fast paths cannot certify
itself.  Conditions are evaluated with ``Fraction`` only.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, comb
from typing import Iterable, Sequence

from baranyai.errors import DomainError
from baranyai.subsets import ParpartitionFamily, are_close, closeness_witness

BRUTE_FORCE_CAP = 20


@dataclass
class ConditionReport:
    name: str
    lhs: Fraction
    rhs: Fraction
    relation: str  # "<=" or ">="

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs if self.relation == "<=" else self.lhs >= self.rhs

    def to_json(self) -> dict:
        return {"name": self.name, "lhs": _frac(self.lhs), "relation": self.relation, "rhs": _frac(self.rhs), "holds": self.holds}


def _frac(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def check_conditions(m: int, l: int, q: int, delta1: int, Delta2: int, Delta3: int) -> list[ConditionReport]:
    """The four degree conditions, each as ``lhs relation rhs`` in exact arithmetic."""
    if l < 2 or q < 1:
        raise DomainError(f"need l >= 2 and q >= 1, got l={l}, q={q}")
    s = (2 * l - 1) ** 2
    prod = Fraction(Delta2 * Delta3)
    return [
        ConditionReport("cycle_density", Fraction(m * (s - 1), s) + Fraction(4 * l - 3 + q, s), Fraction(delta1), "<="),
        ConditionReport("cycle_sparsity", prod, Fraction(q - 1, 5 * l * (2 * l - 1)), "<="),
        ConditionReport("family_density", Fraction(m * (3 * l - 1), 3 * l), Fraction(delta1), "<="),
        ConditionReport("family_sparsity", prod, Fraction(m - 3, 15 * l * l), "<="),
    ]


def check_subset_conditions(n: int, k: int, l: int, alpha: Fraction, beta: Fraction, target: str) -> list[ConditionReport]:
    """Hypotheses on (n, k, l, alpha, beta) for a parpartition ``"family"`` or a cyclic ``"order"``."""
    if target == "family":
        return [
            ConditionReport("k^2*l<=n/3", Fraction(k * k * l), Fraction(n, 3), "<="),
            ConditionReport("alpha+beta>=(k+2)/k", alpha + beta, Fraction(k + 2, k), ">="),
        ]
    if target == "order":
        s = (2 * l - 1) ** 2
        return [
            ConditionReport("alpha+beta>=1", alpha + beta, Fraction(1), ">="),
            # q = m form with eps = 1/(2(2l-1)^2); informational only
            ConditionReport("cycle_density_eps", comb(n, k) * (1 - Fraction(1, 2 * s)), Fraction(comb(n - k, k)), "<="),
        ]
    raise DomainError(f"unknown target {target!r}")


def _check(name: str, violations: list) -> dict:
    return {"name": name, "ok": not violations, "violations": violations}


def _edge_set(g) -> set[frozenset]:
    return {frozenset(e) for e in g.edges()}


def verify_decomposition(g1, blocks: Iterable[Iterable[int]], l: int) -> dict:
    """Block sizes, disjointness, block count floor(m/l), clique-ness in g1."""
    m = g1.m
    blocks = [list(b) for b in blocks]
    e1 = _edge_set(g1)
    v = []
    if len(blocks) != m // l:
        v.append({"kind": "count", "found": len(blocks), "expected": m // l})
    seen: dict[int, int] = {}
    for i, b in enumerate(blocks):
        if len(b) != l or len(set(b)) != l:
            v.append({"kind": "size", "block": i, "members": sorted(b)})
        for x in b:
            if not 0 <= x < m:
                v.append({"kind": "range", "block": i, "vertex": x})
            elif x in seen:
                v.append({"kind": "overlap", "blocks": [seen[x], i], "vertex": x})
            else:
                seen[x] = i
        for x, y in combinations(sorted(set(b)), 2):
            if frozenset((x, y)) not in e1:
                v.append({"kind": "non-edge", "block": i, "pair": [x, y]})
    return _check("decomposition", v)


def verify_ham_power(g1, sequence: Sequence[int], l: int) -> dict:
    """The order is a permutation and every pair at cycle distance <= l-1 is a g1 edge."""
    m = g1.m
    e1 = _edge_set(g1)
    v = []
    if sorted(sequence) != list(range(m)):
        v.append({"kind": "not-a-permutation"})
        return _check("ham_power", v)
    for i in range(m):
        for d in range(1, l):
            a, b = sequence[i], sequence[(i + d) % m]
            if a != b and frozenset((a, b)) not in e1:
                v.append({"kind": "non-edge", "position": i, "distance": d, "pair": [a, b]})
    return _check("ham_power", v)


def verify_block_bags(blocks: Sequence[Iterable[int]], g2, g3) -> dict:
    """No two blocks are joined by a vertex-disjoint green/blue edge pair."""
    owner = {}
    for i, b in enumerate(blocks):
        for x in b:
            owner[x] = i
    by_pair: dict[tuple[int, int], tuple[list, list]] = {}
    for slot, g in ((0, g2), (1, g3)):
        for x, y in g.edges():
            if x in owner and y in owner and owner[x] != owner[y]:
                key = tuple(sorted((owner[x], owner[y])))
                by_pair.setdefault(key, ([], []))[slot].append((x, y))
    v = []
    for key in sorted(by_pair):
        green, blue = by_pair[key]
        for x in green:
            hit = next((y for y in blue if not set(x) & set(y)), None)
            if hit is not None:
                v.append({"pair": list(key), "e2": list(x), "e3": list(hit)})
                break
    return _check("block_bags", v)


def verify_window_bags(sequence: Sequence[int], l: int, g2, g3) -> dict:
    """No two disjoint length-l windows of the cyclic order are joined like a bag."""
    m = len(sequence)
    pos = {v: i for i, v in enumerate(sequence)}

    def starts(*vs):
        common = None
        for x in vs:
            s = {(pos[x] - t) % m for t in range(l)}
            common = s if common is None else common & s
        return common

    def disjoint(s, t):
        return not ({(s + i) % m for i in range(l)} & {(t + i) % m for i in range(l)})

    found = set()
    blue = g3.edges()
    for x in g2.edges():
        for y in blue:
            if set(x) & set(y):
                continue
            for (p, q_), (r, s_) in (((x[0], y[0]), (x[1], y[1])), ((x[0], y[1]), (x[1], y[0]))):
                for s in starts(p, q_):
                    for t in starts(r, s_):
                        if disjoint(s, t):
                            found.add((min(s, t), max(s, t), x, y))
    v = [{"pair": [s, t], "e2": list(x), "e3": list(y)} for s, t, x, y in sorted(found)]
    return _check("window_bags", v)


def _subset_windows(subsets, l):
    m = len(subsets)
    return [tuple(tuple(subsets[(s + t) % m]) for t in range(l)) for s in range(m)]


def verify_theorem_output(artifact, alpha, beta, l: int | None = None) -> dict:
    """Subset-level check of a parpartition family, or of a cyclic order of subsets (give ``l``)."""
    checks = []
    if isinstance(artifact, ParpartitionFamily):
        parts = [[tuple(sorted(b)) for b in p] for p in artifact.parpartitions]
        v1 = []
        seen: dict[tuple, int] = {}
        for i, p in enumerate(parts):
            if len(p) != artifact.l:
                v1.append({"kind": "size", "parpartition": i, "blocks": len(p)})
            for a, b in combinations(p, 2):
                if set(a) & set(b):
                    v1.append({"kind": "overlap", "parpartition": i, "sets": [list(a), list(b)]})
            for b in p:
                if len(b) != artifact.k or any(not 0 <= x < artifact.n for x in b):
                    v1.append({"kind": "bad-set", "parpartition": i, "set": list(b)})
                if b in seen and seen[b] != i:
                    v1.append({"kind": "repeat", "set": list(b), "parpartitions": [seen[b], i]})
                seen.setdefault(b, i)
        checks.append(_check("subsets_disjoint", v1))
        v2 = []
        for i, j in combinations(range(len(parts)), 2):
            w = closeness_witness(tuple(parts[i]), tuple(parts[j]), alpha, beta)
            if w is not None:
                v2.append({"pair": [i, j], "witness": [list(x) for x in w]})
        checks.append(_check("no_close_pair", v2))
    else:
        if l is None:
            raise DomainError("a cyclic order needs the window length l")
        subsets = [tuple(sorted(s)) for s in artifact]
        m = len(subsets)
        v1 = []
        if len(set(subsets)) != m:
            v1.append({"kind": "repeat"})
        windows = _subset_windows(subsets, l)
        for s, w in enumerate(windows):
            for a, b in combinations(w, 2):
                if set(a) & set(b):
                    v1.append({"window": s, "sets": [list(a), list(b)]})
        checks.append(_check("subsets_disjoint", v1))
        v2 = []
        for s in range(m):
            for t in range(s + l, m):
                if m - (t - s) < l:
                    continue
                if are_close(windows[s], windows[t], alpha, beta):
                    v2.append({"pair": [s, t]})
        checks.append(_check("no_close_pair", v2))
    return {"ok": all(c["ok"] for c in checks), "checks": checks}


@dataclass
class CountAudit:
    kind: str
    bound: int
    measured: list[int] = field(default_factory=list)
    bad_bound: int | None = None
    bad_counts: list[int] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(x >= self.bound for x in self.measured)

    @property
    def bad_passed(self) -> bool:
        return self.bad_bound is None or all(x <= self.bad_bound for x in self.bad_counts)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "bound": self.bound,
            "min_measured": min(self.measured) if self.measured else None,
            "samples": len(self.measured),
            "passed": self.passed,
            "bad_bound": self.bad_bound,
            "max_bad": max(self.bad_counts) if self.bad_counts else None,
            "bad_passed": self.bad_passed,
        }


def count_swap_candidates(g1, blocks: Sequence[Sequence[int]], a_idx: int, a1: int, e1: set | None = None) -> int:
    e1 = _edge_set(g1) if e1 is None else e1
    adj = lambda x, y: frozenset((x, y)) in e1  # noqa: E731
    a_block = blocks[a_idx]
    total = 0
    for j, b_block in enumerate(blocks):
        if j == a_idx or not all(adj(a1, b) for b in b_block):
            continue
        total += sum(1 for b1 in b_block if all(adj(a, b1) for a in a_block))
    return total


def count_spanning_windows(g1, sequence: Sequence[int], center_pos: int, l: int, e1: set | None = None) -> int:
    """Windows of 2l-1 vertices disjoint from, and fully joined to, the window centered at ``center_pos``."""
    m = len(sequence)
    r = 2 * l - 1
    e1 = _edge_set(g1) if e1 is None else e1
    c_pos = {(center_pos - l + 1 + t) % m for t in range(r)}
    c0 = [sequence[p] for p in c_pos]
    total = 0
    for s in range(m):
        w_pos = {(s + t) % m for t in range(r)}
        if w_pos & c_pos:
            continue
        if all(frozenset((sequence[p], u)) in e1 for p in w_pos for u in c0):
            total += 1
    return total


def audit_counts(sys, artifact, l: int, q: int = 1, samples: int = 100, seed: int = 0, report=None) -> CountAudit:
    """Measured counts behind the existence arguments, compared with their bounds.

    ``artifact`` is a list of blocks (swap candidates, bound ceil(m/3)) or a
    cyclic sequence (spanning windows, bound q).  Bad-candidate counts are read
    from an audited ``report`` when one is given.
    """
    rng = random.Random(seed)
    m = sys.m
    Delta2, Delta3 = sys.Delta2, sys.Delta3
    e1 = _edge_set(sys.g1)
    if artifact and isinstance(artifact[0], (list, tuple)):
        blocks = [list(b) for b in artifact]
        audit = CountAudit("swap_candidates", ceil(Fraction(m, 3)), bad_bound=5 * l * l * Delta2 * Delta3)
        for _ in range(samples):
            a_idx = rng.randrange(len(blocks))
            a1 = rng.choice(blocks[a_idx])
            audit.measured.append(count_swap_candidates(sys.g1, blocks, a_idx, a1, e1))
    else:
        seq = list(artifact)
        bad_bound = 4 * l * (2 * l - 1) * Delta2 * Delta3 + (2 * l - 1) ** 2 * Delta3
        audit = CountAudit("spanning_segments", q, bad_bound=bad_bound)
        for _ in range(samples):
            audit.measured.append(count_spanning_windows(sys.g1, seq, rng.randrange(m), l, e1))
    if report is not None:
        audit.bad_counts = [a["bad"] for a in report.attempts if a.get("audited")]
    return audit


def _cross_disjoint(a, b, e2: set, e3: set) -> bool:
    c2 = [(x, y) for x in a for y in b if frozenset((x, y)) in e2]
    c3 = [(x, y) for x in a for y in b if frozenset((x, y)) in e3]
    return any(not {x[0], x[1]} & {y[0], y[1]} for x in c2 for y in c3)


def brute_force_search(sys, l: int, target: int):
    """Exhaustive search for ``target`` disjoint g1-cliques of size l with no bag.

    Returns ``(exists, witness_blocks)``.  Exponential; capped at m <= 20.
    """
    m = sys.m
    if m > BRUTE_FORCE_CAP:
        raise DomainError(f"brute force is capped at m <= {BRUTE_FORCE_CAP}, got {m}")
    e1, e2, e3 = _edge_set(sys.g1), _edge_set(sys.g2), _edge_set(sys.g3)
    nbrs = {v: {u for u in range(m) if frozenset((u, v)) in e1} for v in range(m)}
    chosen: list[tuple[int, ...]] = []
    used = [False] * m

    def rec(v: int, skips_left: int) -> bool:
        if len(chosen) == target:
            return True
        while v < m and used[v]:
            v += 1
        if v >= m:
            return False
        free_after = [u for u in range(v + 1, m) if not used[u]]
        if len(free_after) + 1 < l * (target - len(chosen)):
            return False
        pool = [u for u in free_after if u in nbrs[v]]
        for rest in combinations(pool, l - 1):
            if any(y not in nbrs[x] for x, y in combinations(rest, 2)):
                continue
            block = (v,) + rest
            if any(_cross_disjoint(block, other, e2, e3) for other in chosen):
                continue
            chosen.append(block)
            for x in block:
                used[x] = True
            if rec(v + 1, skips_left):
                return True
            chosen.pop()
            for x in block:
                used[x] = False
        if skips_left > 0:
            used[v] = True
            ok = rec(v + 1, skips_left - 1)
            used[v] = False
            return ok
        return False

    found = rec(0, m - l * target)
    return found, [list(b) for b in chosen] if found else []
