"""Alternating-(l,2,l,2)-bags: two disjoint cliques joined by a green and a blue edge.

Colors follow the construction's convention: red = g1 (or an edge inside a
certified clique), green = g2, blue = g3.  A bag between blocks A and B needs a
green edge and a blue edge, both crossing A-B, sharing no endpoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from baranyai.errors import DomainError
from baranyai.graph import Graph, canonical_edge, iter_bits, mask_of

Edge = tuple[int, int]


@dataclass(frozen=True)
class BagWitness:
    clique_a: tuple[int, ...]
    clique_b: tuple[int, ...]
    e2: Edge
    e3: Edge

    def to_json(self, pair=None) -> dict:
        out = {"e2": list(self.e2), "e3": list(self.e3)}
        if pair is not None:
            out["pair"] = list(pair)
        return out


@dataclass(frozen=True)
class ColoredPath:
    vertices: tuple[int, int, int, int]
    colors: str  # "brg" (blue-red-green) or "grb"


def crossing_edges(g: Graph, a_mask: int, b_mask: int, extra: Iterable[Edge] = ()) -> list[Edge]:
    """Sorted canonical edges of ``g`` (plus ``extra``) with one end in A and one in B."""
    out = set()
    for a in iter_bits(a_mask):
        for b in iter_bits(g.adj[a] & b_mask):
            out.add(canonical_edge(a, b))
    for u, v in extra:
        if (a_mask >> u & 1 and b_mask >> v & 1) or (a_mask >> v & 1 and b_mask >> u & 1):
            out.add(canonical_edge(u, v))
    return sorted(out)


def forms_bag(
    a: Iterable[int],
    b: Iterable[int],
    g2: Graph,
    g3: Graph,
    extra3: Iterable[Edge] = (),
) -> BagWitness | None:
    """Lexicographically least (e2, e3) bag witness between blocks ``a`` and ``b``.

    ``extra3`` lists blue edges treated as present in addition to ``g3`` (used
    to test an edge before activating it).
    """
    a, b = tuple(sorted(a)), tuple(sorted(b))
    am, bm = mask_of(a), mask_of(b)
    if am & bm:
        raise DomainError(f"blocks {a} and {b} overlap")
    return _bag_masks(am, bm, g2, g3, tuple(extra3), a, b)


def _bag_masks(am, bm, g2, g3, extra3, a=None, b=None):
    cross3 = crossing_edges(g3, am, bm, extra3)
    if not cross3:
        return None
    cross2 = crossing_edges(g2, am, bm)
    for e2 in cross2:
        x, y = e2
        # an e3 that fails must touch x or y, so this scan is short
        for e3 in cross3:
            if x not in e3 and y not in e3:
                if a is None:
                    a, b = tuple(iter_bits(am)), tuple(iter_bits(bm))
                return BagWitness(a, b, e2, e3)
    return None


def family_bag_scan(blocks: Sequence[Iterable[int]], g2: Graph, g3: Graph) -> list[tuple[tuple[int, int], BagWitness]]:
    """All pairs of (pairwise disjoint) blocks that form a bag."""
    masks = [mask_of(bl) for bl in blocks]
    out = []
    # only pairs joined by some blue edge can form a bag
    for i, mi in enumerate(masks):
        blue_reach = 0
        for v in iter_bits(mi):
            blue_reach |= g3.adj[v]
        for j in range(i + 1, len(masks)):
            mj = masks[j]
            if not blue_reach & mj or mi & mj:
                continue
            w = _bag_masks(mi, mj, g2, g3, ())
            if w is not None:
                out.append(((i, j), w))
    return out


def window_masks(sequence: Sequence[int], l: int) -> list[int]:
    m = len(sequence)
    return [mask_of(sequence[(s + t) % m] for t in range(l)) for s in range(m)]


def disjoint_windows(m: int, l: int, s: int, t: int) -> bool:
    """Whether the length-l windows at cyclic positions s and t share no position."""
    d = (t - s) % m
    return l <= d <= m - l


def window_bag_scan(sequence: Sequence[int], l: int, g2: Graph, g3: Graph) -> list[tuple[tuple[int, int], BagWitness]]:
    """Bags among all disjoint pairs of the m consecutive length-l windows of a cyclic order."""
    m = len(sequence)
    masks = window_masks(sequence, l)
    out = []
    for i in range(m):
        mi = masks[i]
        blue_reach = 0
        for v in iter_bits(mi):
            blue_reach |= g3.adj[v]
        if not blue_reach:
            continue
        for j in range(i + l, m):
            if not disjoint_windows(m, l, i, j) or not blue_reach & masks[j]:
                continue
            w = _bag_masks(mi, masks[j], g2, g3, ())
            if w is not None:
                out.append(((i, j), w))
    return out


def enumerate_witness_paths(
    a1: int,
    targets: Iterable[int] | None,
    red: Graph,
    g2: Graph,
    g3: Graph,
    pattern: str,
) -> list[ColoredPath]:
    """All 4-vertex paths ``(a1, x1, x2, x3)`` colored per ``pattern``.

    ``"brg"`` is blue-red-green, ``"grb"`` green-red-blue; ``red`` holds the
    clique edges.  ``targets`` restricts the last vertex (None = anywhere).
    """
    if pattern == "brg":
        first, last = g3, g2
    elif pattern == "grb":
        first, last = g2, g3
    else:
        raise DomainError(f"unknown pattern {pattern!r}")
    tmask = -1 if targets is None else mask_of(targets)
    out = []
    for x1 in iter_bits(first.adj[a1]):
        for x2 in iter_bits(red.adj[x1] & ~(1 << a1)):
            for x3 in iter_bits(last.adj[x2] & tmask & ~(1 << a1 | 1 << x1)):
                out.append(ColoredPath((a1, x1, x2, x3), pattern))
    return out
