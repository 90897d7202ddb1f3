"""Bitmask graph core: exact independence numbers and maximum-independent-set
enumeration.

A graph is stored as one Python-int adjacency row per vertex, so neighbourhood
algebra (independence tests, candidate pruning, kernel intersections) is plain
integer bit twiddling.  alpha(G) is computed as a maximum clique of the
complement by branch and bound with greedy-colouring upper bounds; the same
search, with the bound relaxed from "can beat the incumbent" to "can still
reach alpha", visits every maximum independent set exactly once.

Vertex order inside the solver is descending complement-degree with ties by
index, which makes both the witness and the enumeration order reproducible.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

MAX_VERTICES = 4096
DEFAULT_MIS_CAP = 10**6


class FamilyTooLargeError(RuntimeError):
    """The maximum-independent-set family exceeded its enumeration cap."""


@dataclass(frozen=True)
class VertexSet:
    """Subset of {0..n-1} held as a bitmask over an n-vertex universe."""

    n: int
    bits: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"negative universe size {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bits {self.bits:#x} not confined to 0..{self.n - 1}")

    @classmethod
    def from_members(cls, n: int, members: Iterable[int]) -> VertexSet:
        bits = 0
        for v in members:
            if not 0 <= v < n:
                raise ValueError(f"vertex {v} out of range 0..{n - 1}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def empty(cls, n: int) -> VertexSet:
        return cls(n, 0)

    @classmethod
    def full(cls, n: int) -> VertexSet:
        return cls(n, (1 << n) - 1)

    def members(self) -> tuple[int, ...]:
        return tuple(_iter_bits(self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return _iter_bits(self.bits)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def _check_universe(self, other: VertexSet) -> None:
        if self.n != other.n:
            raise ValueError(f"mismatched universes ({self.n} vs {other.n})")

    def __and__(self, other: VertexSet) -> VertexSet:
        self._check_universe(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __or__(self, other: VertexSet) -> VertexSet:
        self._check_universe(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __sub__(self, other: VertexSet) -> VertexSet:
        self._check_universe(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def isdisjoint(self, other: VertexSet) -> bool:
        self._check_universe(other)
        return not self.bits & other.bits

    def issubset(self, other: VertexSet) -> bool:
        self._check_universe(other)
        return self.bits & ~other.bits == 0


@dataclass(frozen=True)
class MisFamily:
    """A family of maximum independent sets, all of size ``alpha``.

    ``complete`` asserts the family contains *every* maximum independent set
    of the source graph; enumeration sets it False when a cap truncated the
    search.
    """

    alpha: int
    sets: tuple[VertexSet, ...]
    complete: bool

    def __post_init__(self):
        seen = set()
        for s in self.sets:
            if len(s) != self.alpha:
                raise ValueError(f"member of size {len(s)} in family with alpha={self.alpha}")
            if s.bits in seen:
                raise ValueError("duplicate member in family")
            seen.add(s.bits)

    def __len__(self) -> int:
        return len(self.sets)


class Graph:
    """Immutable undirected graph on vertices 0..n-1 with bitmask rows."""

    __slots__ = ("n", "adj", "_comp")

    def __init__(self, n: int, adj: Iterable[int], validate: bool = True):
        self.n = n
        self.adj = tuple(adj)
        self._comp = None
        if n < 0:
            raise ValueError("negative vertex count")
        if n > MAX_VERTICES:
            raise ValueError(f"n={n} exceeds the {MAX_VERTICES}-vertex bitmask cap")
        if len(self.adj) != n:
            raise ValueError(f"expected {n} adjacency rows, got {len(self.adj)}")
        if validate:
            _validate_rows(n, self.adj)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, validate=False)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(n, [0] * n, validate=False)

    @classmethod
    def complete(cls, n: int) -> Graph:
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)], validate=False)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(r.bit_count() for r in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            for v in _iter_bits(self.adj[u] >> (u + 1) << (u + 1)):
                yield (u, v)

    def complement_rows(self) -> tuple[int, ...]:
        """Adjacency rows of the complement graph (cached)."""
        if self._comp is None:
            full = (1 << self.n) - 1
            self._comp = tuple(full & ~(self.adj[v] | 1 << v) for v in range(self.n))
        return self._comp

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges()})"

    def __reduce__(self):
        return (_rebuild_graph, (self.n, self.adj))


def _rebuild_graph(n, adj):
    return Graph(n, adj, validate=False)


def _iter_bits(bits: int) -> Iterator[int]:
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def _validate_rows(n: int, rows: tuple[int, ...]) -> None:
    for v, row in enumerate(rows):
        if row < 0 or row >> n:
            raise ValueError(f"row {v} has bits outside 0..{n - 1}")
        if row >> v & 1:
            raise ValueError(f"self-loop at vertex {v}")
    if n <= 128:
        for v in range(n):
            for u in _iter_bits(rows[v]):
                if not rows[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")
        return
    # matrix check: cheaper than per-bit loops for thousands of vertices
    nbytes = (n + 7) // 8
    buf = b"".join(row.to_bytes(nbytes, "little") for row in rows)
    mat = np.unpackbits(
        np.frombuffer(buf, dtype=np.uint8).reshape(n, nbytes),
        axis=1, count=n, bitorder="little",
    )
    if not np.array_equal(mat, mat.T):
        raise ValueError("asymmetric adjacency")


# ---------------------------------------------------------------------------
# exact solver: maximum clique on the complement
# ---------------------------------------------------------------------------


def _ensure_recursion(n: int) -> None:
    need = 4 * n + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def _relabel(rows: tuple[int, ...], start: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Restrict ``rows`` to ``start`` and relabel by descending degree, ties by index.

    Returns (relabelled rows, new-index -> old-vertex map).  The fixed order
    makes witnesses and enumeration order reproducible and keeps the greedy
    colouring tight on irregular graphs.
    """
    verts = sorted(_iter_bits(start), key=lambda v: (-(rows[v] & start).bit_count(), v))
    pos = {v: i for i, v in enumerate(verts)}
    out = []
    for v in verts:
        row = 0
        for u in _iter_bits(rows[v] & start):
            row |= 1 << pos[u]
        out.append(row)
    return tuple(out), tuple(verts)


def _map_back(mask: int, verts: tuple[int, ...]) -> int:
    out = 0
    for i in _iter_bits(mask):
        out |= 1 << verts[i]
    return out


def _color_order(P: int, rows: tuple[int, ...]) -> list[tuple[int, int]]:
    """Greedy-colour the candidate mask ``P`` against ``rows``.

    Returns (vertex, colour) pairs with colours ascending; the colour of the
    last vertex bounds the largest clique inside P.
    """
    order = []
    colour = 0
    rest = P
    while rest:
        colour += 1
        q = rest
        while q:
            v = (q & -q).bit_length() - 1
            bit = 1 << v
            order.append((v, colour))
            rest ^= bit
            q &= ~(rows[v] | bit)
    return order


def _max_clique(rows: tuple[int, ...], start: int) -> tuple[int, int]:
    """Largest clique (size, mask) of the graph ``rows`` restricted to ``start``."""
    best_size = 0
    best_mask = 0
    _ensure_recursion(start.bit_count())

    def expand(rsize: int, rmask: int, P: int) -> None:
        nonlocal best_size, best_mask
        if not P:
            if rsize > best_size:
                best_size, best_mask = rsize, rmask
            return
        order = _color_order(P, rows)
        for v, colour in reversed(order):
            if rsize + colour <= best_size:
                return
            bit = 1 << v
            expand(rsize + 1, rmask | bit, P & rows[v])
            P &= ~bit

    expand(0, 0, start)
    return best_size, best_mask


def _iter_max_cliques(rows: tuple[int, ...], start: int, target: int) -> Iterator[int]:
    """Yield every clique mask of size ``target`` within ``start``, each once.

    ``target`` must be the clique number of the restriction, so the pruning
    rule "cannot reach target" never discards a maximum clique.
    """
    _ensure_recursion(start.bit_count())

    def rec(rsize: int, rmask: int, P: int) -> Iterator[int]:
        if rsize == target:
            yield rmask
            return
        if not P:
            return
        order = _color_order(P, rows)
        for v, colour in reversed(order):
            if rsize + colour < target:
                return
            bit = 1 << v
            yield from rec(rsize + 1, rmask | bit, P & rows[v])
            P &= ~bit

    return rec(0, 0, start)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------


def is_independent(g: Graph, s: VertexSet) -> bool:
    """True iff no edge of ``g`` has both endpoints in ``s``."""
    if s.n != g.n:
        raise ValueError(f"vertex set over {s.n} vertices against graph on {g.n}")
    bits = s.bits
    for v in _iter_bits(bits):
        if g.adj[v] & bits:
            return False
    return True


def _solve_witness(g: Graph, within_bits: int) -> tuple[int, int]:
    """(alpha, witness mask in original labels) for the induced restriction."""
    rows, verts = _relabel(g.complement_rows(), within_bits)
    size, mask = _max_clique(rows, (1 << len(verts)) - 1)
    return size, _map_back(mask, verts)


def _iter_mis_masks(g: Graph, within_bits: int) -> Iterator[int]:
    """Masks of all maximum independent sets of the restriction, each once."""
    rows, verts = _relabel(g.complement_rows(), within_bits)
    full = (1 << len(verts)) - 1
    target, _ = _max_clique(rows, full)
    for mask in _iter_max_cliques(rows, full, target):
        yield _map_back(mask, verts)


def maximum_independent_set(g: Graph) -> VertexSet:
    """One maximum independent set of ``g`` (deterministic witness)."""
    _, mask = _solve_witness(g, (1 << g.n) - 1)
    return VertexSet(g.n, mask)


def alpha(g: Graph) -> int:
    """Exact independence number of ``g``."""
    size, _ = _solve_witness(g, (1 << g.n) - 1)
    return size


def alpha_induced(g: Graph, within: VertexSet | int) -> int:
    """Exact independence number of the subgraph induced on ``within``."""
    bits = within.bits if isinstance(within, VertexSet) else within
    if bits >> g.n:
        raise ValueError("induced set has vertices outside the graph")
    size, _ = _solve_witness(g, bits)
    return size


def iter_maximum_independent_sets(g: Graph) -> Iterator[VertexSet]:
    """Stream all maximum independent sets in deterministic search order."""
    for mask in _iter_mis_masks(g, (1 << g.n) - 1):
        yield VertexSet(g.n, mask)


def enumerate_mis(g: Graph, cap: int = DEFAULT_MIS_CAP) -> MisFamily:
    """All maximum independent sets of ``g``, up to ``cap`` of them.

    If more than ``cap`` exist, the first ``cap`` in search order are kept and
    the family is marked incomplete.  The returned sets are sorted by member
    tuple so equal families compare equal.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    a, _ = _solve_witness(g, (1 << g.n) - 1)
    masks = []
    complete = True
    for mask in _iter_mis_masks(g, (1 << g.n) - 1):
        if len(masks) == cap:
            complete = False
            break
        masks.append(mask)
    sets = sorted((VertexSet(g.n, m) for m in masks), key=VertexSet.members)
    return MisFamily(alpha=a, sets=tuple(sets), complete=complete)


def induced_subgraph(g: Graph, w: VertexSet) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``w`` plus the new-index -> old-vertex map."""
    if w.n != g.n:
        raise ValueError(f"vertex set over {w.n} vertices against graph on {g.n}")
    old = w.members()
    pos = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        for u in _iter_bits(g.adj[v] & w.bits):
            row |= 1 << pos[u]
        rows.append(row)
    return Graph(len(old), rows, validate=False), old


def random_graph(n: int, p: float, seed) -> Graph:
    """Erdos-Renyi G(n, p) from a numpy seed or Generator; deterministic."""
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    rows = [0] * n
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    return Graph(n, rows, validate=False)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges()]}


def graph_from_json_dict(obj: dict) -> Graph:
    return Graph.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])


def save_graph(g: Graph, path) -> None:
    with open(path, "w") as fh:
        json.dump(graph_to_json_dict(g), fh, sort_keys=True)
        fh.write("\n")


def parse_dimacs(text: str) -> Graph:
    """DIMACS edge format: 'p edge n m' header, 'e u v' lines, 1-based."""
    n = None
    edges = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
        elif parts[0] == "e":
            if n is None:
                raise ValueError("DIMACS edge line before problem line")
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
    if n is None:
        raise ValueError("missing DIMACS problem line")
    return Graph.from_edges(n, edges)


def load_graph(path) -> Graph:
    """Read a graph file, sniffing JSON vs DIMACS."""
    with open(path) as fh:
        text = fh.read()
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json_dict(json.loads(text))
    return parse_dimacs(text)
