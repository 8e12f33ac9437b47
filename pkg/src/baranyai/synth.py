"""Seeded synthetic systems with prescribed min degree of g1 and max degrees of g2, g3.

Randomness comes from ``random.Random`` (MT19937) seeded with the seed
reduced to 64 bits.  Edge lists are shuffled in canonical sorted order, so
identical seeds regenerate identical graphs.
"""

from __future__ import annotations

import random

from baranyai.errors import DomainError, InsufficientRoom
from baranyai.graph import Graph, TripleGraphSystem, max_degree

SEED_MASK = (1 << 64) - 1


def _rng(seed: int) -> random.Random:
    return random.Random(seed & SEED_MASK)


def gen_dense(m: int, delta: int, seed: int) -> Graph:
    """K_m minus a random maximal edge set whose removal keeps every degree >= ``delta``."""
    if not 0 <= delta <= m - 1:
        raise DomainError(f"need 0 <= delta <= m-1, got delta={delta}, m={m}")
    g = Graph.complete(m)
    edges = g.edges()
    _rng(seed).shuffle(edges)
    deg = [m - 1] * m
    for u, v in edges:
        if deg[u] > delta and deg[v] > delta:
            g.remove_edge(u, v)
            deg[u] -= 1
            deg[v] -= 1
    return g


def _gen_bounded(m: int, target: int, pool: list, rng: random.Random) -> Graph:
    g = Graph(m)
    if target <= 0:
        return g
    pool = list(pool)
    rng.shuffle(pool)
    deg = [0] * m
    for u, v in pool:
        if deg[u] < target and deg[v] < target:
            g.add_edge(u, v)
            deg[u] += 1
            deg[v] += 1
    if m == 0 or max(deg) < target:
        raise InsufficientRoom(f"complement of the forbidden graph cannot reach degree {target}")
    return g


def gen_sparse_pair(m: int, Delta2: int, Delta3: int, forbidden: Graph, seed: int) -> tuple[Graph, Graph]:
    """Two random maximal graphs with max degrees ``Delta2``/``Delta3`` avoiding ``forbidden``.

    The two outputs may share edges.
    """
    if forbidden.m != m:
        raise DomainError("forbidden graph has the wrong vertex count")
    if Delta2 < 0 or Delta3 < 0:
        raise DomainError("degree targets must be nonnegative")
    full = (1 << m) - 1
    pool = []
    for u in range(m):
        free = ~forbidden.adj[u] & full & ~((1 << (u + 1)) - 1)
        pool.extend((u, v) for v in range(u + 1, m) if free >> v & 1)
    rng = _rng(seed)
    g2 = _gen_bounded(m, Delta2, pool, rng)
    g3 = _gen_bounded(m, Delta3, pool, rng)
    return g2, g3


def gen_system(m: int, delta1: int, Delta2: int, Delta3: int, seed: int) -> TripleGraphSystem:
    """Dense g1 from ``seed`` and the sparse pair from ``seed + 1``."""
    g1 = gen_dense(m, delta1, seed)
    g2, g3 = gen_sparse_pair(m, Delta2, Delta3, g1, seed + 1)
    meta = {"provenance": {"seed": seed, "params": {"m": m, "delta1": delta1, "Delta2": Delta2, "Delta3": Delta3}}}
    return TripleGraphSystem(g1, g2, g3, meta=meta)


def check_generated(sys: TripleGraphSystem, delta1: int, Delta2: int, Delta3: int) -> bool:
    return sys.delta1 >= delta1 and max_degree(sys.g2) <= Delta2 and max_degree(sys.g3) <= Delta3
