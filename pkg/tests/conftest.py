"""Brute-force oracles shared across the suite.

These deliberately avoid the package's branch-and-bound path: independence is
checked pair by pair against the adjacency rows, and alpha by scanning all
2^n subsets.  Keep n small wherever they are used.
"""

from __future__ import annotations

import numpy as np

from mishit.graph import Graph, random_graph


def oracle_is_independent(g: Graph, bits: int) -> bool:
    members = [v for v in range(g.n) if bits >> v & 1]
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            if g.adj[u] >> v & 1:
                return False
    return True


def oracle_alpha(g: Graph) -> int:
    assert g.n <= 16, "oracle scans all subsets"
    best = 0
    for bits in range(1 << g.n):
        if bits.bit_count() > best and oracle_is_independent(g, bits):
            best = bits.bit_count()
    return best


def oracle_mis_masks(g: Graph) -> list[int]:
    a = oracle_alpha(g)
    return sorted(
        bits
        for bits in range(1 << g.n)
        if bits.bit_count() == a and oracle_is_independent(g, bits)
    )


def seeded_graphs(count: int, seed: int, n_lo: int = 1, n_hi: int = 12):
    """Deterministic stream of random test graphs."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        n = int(rng.integers(n_lo, n_hi + 1))
        p = float(rng.uniform(0.1, 0.9))
        yield random_graph(n, p, rng)


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])
