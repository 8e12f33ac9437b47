"""Simple graphs on dense vertex ids with bitset adjacency."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from baranyai.errors import DomainError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def canonical_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices ``0..m-1``.

    ``adj[v]`` is an int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent,
    so "is b adjacent to every vertex of A" is ``adj[b] & A == A``.
    """

    __slots__ = ("m", "adj")

    def __init__(self, m: int, edges: Iterable[tuple[int, int]] = ()):
        if m < 0:
            raise DomainError(f"vertex count must be nonnegative, got {m}")
        self.m = m
        self.adj = [0] * m
        for u, v in edges:
            self.add_edge(u, v)

    @classmethod
    def complete(cls, m: int) -> Graph:
        g = cls(m)
        full = (1 << m) - 1
        g.adj = [full ^ (1 << v) for v in range(m)]
        return g

    def _check(self, v: int) -> None:
        if not 0 <= v < self.m:
            raise DomainError(f"vertex {v} out of range [0, {self.m})")

    def add_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if u == v:
            raise DomainError(f"self-loop at {u}")
        self.adj[u] |= 1 << v
        self.adj[v] |= 1 << u

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        self.adj[u] &= ~(1 << v)
        self.adj[v] &= ~(1 << u)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self.adj]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def edges(self) -> list[tuple[int, int]]:
        """Canonical sorted edge list, each edge as ``(u, v)`` with ``u < v``."""
        out = []
        for u, a in enumerate(self.adj):
            out.extend((u, v) for v in iter_bits(a >> (u + 1) << (u + 1)))
        return out

    def edge_count(self) -> int:
        return sum(self.degrees()) // 2

    def copy(self) -> Graph:
        g = Graph(self.m)
        g.adj = list(self.adj)
        return g

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.m == other.m and self.adj == other.adj

    def __repr__(self) -> str:
        return f"Graph(m={self.m}, edges={self.edge_count()})"

    def to_json(self) -> dict:
        return {"m": self.m, "edges": [list(e) for e in self.edges()]}

    @classmethod
    def from_json(cls, data: dict) -> Graph:
        return cls(data["m"], (tuple(e) for e in data["edges"]))


def min_degree(g: Graph) -> int:
    if g.m == 0:
        raise DomainError("min_degree of the empty graph")
    return min(g.degrees())


def max_degree(g: Graph) -> int:
    if g.m == 0:
        raise DomainError("max_degree of the empty graph")
    return max(g.degrees())


def is_clique(g: Graph, vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    for v in vs:
        g._check(v)
    mask = mask_of(vs)
    return all(mask & ~(g.adj[v] | 1 << v) == 0 for v in vs)


@dataclass
class TripleGraphSystem:
    """Red/green/blue graphs on one vertex set; E1 must avoid E2 and E3.

    ``meta`` carries optional provenance (subset universe, generator seed) that
    is round-tripped through JSON untouched.
    """

    g1: Graph
    g2: Graph
    g3: Graph
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.g1.m == self.g2.m == self.g3.m:
            raise DomainError("g1, g2, g3 must share the vertex count")

    @property
    def m(self) -> int:
        return self.g1.m

    @property
    def delta1(self) -> int:
        return min_degree(self.g1)

    @property
    def Delta2(self) -> int:
        return max_degree(self.g2)

    @property
    def Delta3(self) -> int:
        return max_degree(self.g3)

    def to_json(self) -> dict:
        out = {
            "m": self.m,
            "g1": [list(e) for e in self.g1.edges()],
            "g2": [list(e) for e in self.g2.edges()],
            "g3": [list(e) for e in self.g3.edges()],
        }
        out.update(self.meta)
        return out

    @classmethod
    def from_json(cls, data: dict) -> TripleGraphSystem:
        m = data["m"]
        graphs = [Graph(m, (tuple(e) for e in data[key])) for key in ("g1", "g2", "g3")]
        meta = {k: v for k, v in data.items() if k not in ("m", "g1", "g2", "g3")}
        return cls(*graphs, meta=meta)


def assert_triple_disjointness(sys: TripleGraphSystem) -> list[tuple[tuple[int, int], str]]:
    """Return every edge of g1 that also lies in g2 or g3; empty means the system is valid."""
    violations = []
    for u in range(sys.m):
        for other, label in ((sys.g2, "g1&g2"), (sys.g3, "g1&g3")):
            common = sys.g1.adj[u] & other.adj[u]
            common = common >> (u + 1) << (u + 1)
            violations.extend(((u, v), label) for v in iter_bits(common))
    violations.sort()
    return violations
