"""k-subsets of [n] as graph vertices, and the closeness relation on parpartitions.

Vertices are k-subsets in colexicographic order.  Two vertices are joined in
g1 when their subsets are disjoint, in g2 (g3) when they share more than
alpha*k (beta*k) elements.  All threshold comparisons are integer arithmetic
on the numerator and denominator.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Iterable, Sequence

from baranyai.errors import DomainError, IntegrityError
from baranyai.graph import Graph, TripleGraphSystem

Parpartition = tuple  # tuple of sorted int tuples, pairwise disjoint


def threshold(value) -> Fraction:
    """Parse an exact threshold in (0, 1) from a Fraction, int pair or ``"p/q"`` string."""
    if isinstance(value, str):
        if "." in value or "e" in value.lower():
            raise DomainError(f"thresholds must be given as p/q, got {value!r}")
        value = Fraction(value)
    elif isinstance(value, tuple):
        value = Fraction(*value)
    elif not isinstance(value, Fraction):
        raise DomainError(f"threshold must be exact, got {type(value).__name__}")
    if not 0 < value < 1:
        raise DomainError(f"threshold must lie in (0, 1), got {value}")
    return value


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def exceeds(size: int, t: Fraction, k: int) -> bool:
    """``size > t*k`` without floating point."""
    return size * t.denominator > t.numerator * k


@dataclass(frozen=True)
class KSubsetUniverse:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise DomainError(f"need 1 <= k < n, got n={self.n}, k={self.k}")

    @property
    def m(self) -> int:
        return comb(self.n, self.k)

    def rank(self, subset: Iterable[int]) -> int:
        s = sorted(subset)
        if len(s) != self.k or len(set(s)) != self.k:
            raise DomainError(f"expected {self.k} distinct elements, got {s}")
        if s[0] < 0 or s[-1] >= self.n:
            raise DomainError(f"elements must lie in [0, {self.n}), got {s}")
        return sum(comb(x, i + 1) for i, x in enumerate(s))

    def unrank(self, idx: int) -> tuple[int, ...]:
        if not 0 <= idx < self.m:
            raise DomainError(f"id {idx} out of range [0, {self.m})")
        out = []
        x = self.n - 1
        for i in range(self.k, 0, -1):
            while comb(x, i) > idx:
                x -= 1
            out.append(x)
            idx -= comb(x, i)
            x -= 1
        return tuple(reversed(out))

    def mask(self, idx: int) -> int:
        return sum(1 << x for x in self.unrank(idx))


@lru_cache(maxsize=32)
def _intersection_profile(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """``profile[s][v]`` = bitset of vertices whose subset meets v's in exactly s elements."""
    u = KSubsetUniverse(n, k)
    m = u.m
    masks = [u.mask(v) for v in range(m)]
    prof = [[0] * m for _ in range(k)]
    for a in range(m):
        ma = masks[a]
        row = prof
        for b in range(a + 1, m):
            s = (ma & masks[b]).bit_count()
            row[s][a] |= 1 << b
            row[s][b] |= 1 << a
    return tuple(tuple(r) for r in prof)


def reduction_warnings(n: int, k: int, alpha: Fraction, beta: Fraction) -> list[str]:
    out = []
    if 2 * k > n:
        out.append(f"k={k} > n/2: disjointness graph g1 is empty")
    for name, t in (("alpha", alpha), ("beta", beta)):
        if not exceeds(k - 1, t, k):
            out.append(f"{name}*k >= k-1: the {name} intersection graph is empty (closeness is vacuous)")
    return out


def build_triple_system(n: int, k: int, alpha, beta) -> TripleGraphSystem:
    alpha, beta = threshold(alpha), threshold(beta)
    u = KSubsetUniverse(n, k)
    if 2 * k > n:
        warnings.warn(f"k={k} > n/2 leaves g1 without edges", stacklevel=2)
    prof = _intersection_profile(n, k)
    m = u.m
    g1, g2, g3 = Graph(m), Graph(m), Graph(m)
    g1.adj = list(prof[0])
    for g, t in ((g2, alpha), (g3, beta)):
        sizes = [s for s in range(k) if exceeds(s, t, k)]
        g.adj = [sum_or(prof[s][v] for s in sizes) for v in range(m)]
    meta = {"universe": {"n": n, "k": k, "alpha": format_fraction(alpha), "beta": format_fraction(beta)}}
    return TripleGraphSystem(g1, g2, g3, meta=meta)


def sum_or(masks: Iterable[int]) -> int:
    out = 0
    for x in masks:
        out |= x
    return out


def reduction_degrees(n: int, k: int, alpha, beta) -> tuple[int, int, int]:
    """Closed-form degrees of the (regular) g1, g2, g3."""
    alpha, beta = threshold(alpha), threshold(beta)

    def overlap_degree(t: Fraction) -> int:
        # i ranges over 1 <= i < (1 - t) k
        return sum(
            comb(k, i) * comb(n - k, i)
            for i in range(1, k + 1)
            if i * t.denominator < (t.denominator - t.numerator) * k
        )

    return comb(n - k, k), overlap_degree(alpha), overlap_degree(beta)


def make_parpartition(blocks: Iterable[Iterable[int]], n: int | None = None, k: int | None = None) -> Parpartition:
    bs = [tuple(sorted(b)) for b in blocks]
    seen: set[int] = set()
    for b in bs:
        if k is not None and len(b) != k:
            raise IntegrityError(f"block {b} does not have {k} elements")
        if n is not None and any(not 0 <= x < n for x in b):
            raise IntegrityError(f"block {b} has elements outside [0, {n})")
        if seen & set(b):
            raise IntegrityError(f"block {b} overlaps an earlier block")
        seen |= set(b)
    return tuple(sorted(bs))


def closeness_witness(p1: Parpartition, p2: Parpartition, alpha, beta):
    """First ``(A1, B1, A2, B2)`` making ``p1`` and ``p2`` (alpha, beta)-close, else None."""
    alpha, beta = threshold(alpha), threshold(beta)
    if len(p1) < 2 or len(p2) < 2:
        raise DomainError("closeness needs at least two sets per parpartition")
    k = len(p1[0])
    sets1 = [frozenset(b) for b in p1]
    sets2 = [frozenset(b) for b in p2]
    for i1, j1 in permutations(range(len(sets1)), 2):
        for i2, j2 in permutations(range(len(sets2)), 2):
            if exceeds(len(sets1[i1] & sets2[i2]), alpha, k) and exceeds(len(sets1[j1] & sets2[j2]), beta, k):
                return p1[i1], p1[j1], p2[i2], p2[j2]
    return None


def are_close(p1: Parpartition, p2: Parpartition, alpha, beta) -> bool:
    return closeness_witness(p1, p2, alpha, beta) is not None


@dataclass
class ParpartitionFamily:
    n: int
    k: int
    l: int
    alpha: Fraction
    beta: Fraction
    parpartitions: list

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "l": self.l,
            "alpha": format_fraction(self.alpha),
            "beta": format_fraction(self.beta),
            "parpartitions": [[list(b) for b in p] for p in self.parpartitions],
        }

    @classmethod
    def from_json(cls, data: dict) -> ParpartitionFamily:
        return cls(
            data["n"],
            data["k"],
            data["l"],
            threshold(data["alpha"]),
            threshold(data["beta"]),
            [tuple(tuple(b) for b in p) for p in data["parpartitions"]],
        )


def clique_to_parpartition(u: KSubsetUniverse, clique: Iterable[int]) -> Parpartition:
    try:
        return make_parpartition((u.unrank(v) for v in clique), u.n, u.k)
    except IntegrityError as exc:
        raise IntegrityError(f"vertices {sorted(clique)} are not a clique of the disjointness graph: {exc}") from None


def family_to_parpartitions(u: KSubsetUniverse, blocks: Sequence[Iterable[int]], alpha, beta) -> ParpartitionFamily:
    parts = [clique_to_parpartition(u, b) for b in blocks]
    l = len(parts[0]) if parts else 0
    return ParpartitionFamily(u.n, u.k, l, threshold(alpha), threshold(beta), parts)


def window_to_parpartition(u: KSubsetUniverse, sequence: Sequence[int], start: int, l: int) -> Parpartition:
    m = len(sequence)
    return clique_to_parpartition(u, [sequence[(start + t) % m] for t in range(l)])


def all_subsets(n: int, k: int) -> list[tuple[int, ...]]:
    """All k-subsets of [n] in colex order (independent of ``unrank``)."""
    return sorted(combinations(range(n), k), key=lambda s: s[::-1])
