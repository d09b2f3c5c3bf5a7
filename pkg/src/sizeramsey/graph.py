"""Small simple graphs stored as adjacency bitmasks, plus text I/O.

Vertex ``v`` of a :class:`Graph` is the integer ``v`` in ``range(order)``;
``adj[v]`` is an int whose bit ``u`` is set iff ``u`` and ``v`` are adjacent.
Vertex sets are passed around either as iterables of ints or as bitmasks,
depending on which is cheaper for the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator

MAX_ORDER = 64


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    order: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.order <= MAX_ORDER:
            raise ValueError(f"order must be in 1..{MAX_ORDER}, got {self.order}")
        if len(self.adj) != self.order:
            raise ValueError("adjacency length does not match order")
        full = (1 << self.order) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"row {v} references a vertex outside the graph")
            if row >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u},{v}}}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = [0] * order
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {{{u},{v}}} outside 0..{order - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(order, tuple(adj))

    @classmethod
    def empty(cls, order: int) -> Graph:
        return cls(order, (0,) * order)

    @classmethod
    def complete(cls, order: int) -> Graph:
        full = (1 << order) - 1
        return cls(order, tuple(full ^ (1 << v) for v in range(order)))

    @property
    def vertex_mask(self) -> int:
        return (1 << self.order) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> list[int]:
        return list(bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """All edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        return [(u, v) for u in range(self.order) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def relabel(self, perm: list[int] | tuple[int, ...]) -> Graph:
        """Return the graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph.from_edges(self.order, ((perm[u], perm[v]) for u, v in self.edges()))

    def add_edge(self, u: int, v: int) -> Graph:
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.order, tuple(adj))

    def remove_edges(self, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = list(self.adj)
        for u, v in edges:
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        return Graph(self.order, tuple(adj))

    def add_vertices(self, count: int = 1) -> Graph:
        return Graph(self.order + count, self.adj + (0,) * count)

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, edges={self.edges()})"


# ---------------------------------------------------------------------------
# primitive operations


def complement(g: Graph) -> Graph:
    full = g.vertex_mask
    return Graph(g.order, tuple(full ^ row ^ (1 << v) for v, row in enumerate(g.adj)))


def induced(g: Graph, x: Iterable[int]) -> Graph:
    """Induced subgraph on ``x``, relabelled 0..|x|-1 in increasing vertex order."""
    verts = sorted(set(x))
    if not verts:
        raise ValueError("induced subgraph needs a nonempty vertex set")
    for v in verts:
        if not 0 <= v < g.order:
            raise ValueError(f"vertex {v} not in graph of order {g.order}")
    index = {v: i for i, v in enumerate(verts)}
    mask = to_mask(verts)
    adj = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v] & mask):
            row |= 1 << index[u]
        adj.append(row)
    return Graph(len(verts), tuple(adj))


def delete_vertices(g: Graph, x: Iterable[int]) -> Graph:
    """``G \\ X``: induced subgraph on the vertices outside ``x``."""
    drop = set(x)
    return induced(g, [v for v in range(g.order) if v not in drop])


def degrees(g: Graph) -> list[int]:
    return [row.bit_count() for row in g.adj]


def max_degree(g: Graph) -> int:
    return max(degrees(g))


def min_degree(g: Graph) -> int:
    return min(degrees(g))


def edges_between(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    """``e(A, B)``: number of edges with one end in ``a`` and the other in ``b``."""
    a, b = set(a), set(b)
    return sum(1 for u, v in g.edges() if (u in a and v in b) or (u in b and v in a))


def is_matching(g: Graph) -> bool:
    return all(row.bit_count() <= 1 for row in g.adj)


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


def components(g: Graph) -> list[int]:
    """Connected components as vertex bitmasks, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(g.order):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(comp)
    return out


def find_clique(g: Graph, n: int, within: int | None = None) -> tuple[int, ...] | None:
    """Return some ``n`` pairwise adjacent vertices inside ``within`` (default: all), or None."""
    if n < 1:
        raise ValueError("clique size must be at least 1")
    cand = g.vertex_mask if within is None else within

    def extend(chosen: tuple[int, ...], cand: int) -> tuple[int, ...] | None:
        if len(chosen) == n:
            return chosen
        if cand.bit_count() < n - len(chosen):
            return None
        for v in bits(cand):
            cand &= ~(1 << v)
            found = extend(chosen + (v,), cand & g.adj[v])
            if found:
                return found
        return None

    return extend((), cand)


def contains_clique(g: Graph, n: int) -> tuple[bool, tuple[int, ...] | None]:
    witness = find_clique(g, n)
    return witness is not None, witness


def iter_cliques(g: Graph, n: int, within: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every ``n``-clique exactly once, as an increasing vertex tuple."""
    cand0 = g.vertex_mask if within is None else within

    def rec(chosen: tuple[int, ...], cand: int) -> Iterator[tuple[int, ...]]:
        if len(chosen) == n:
            yield chosen
            return
        for v in bits(cand):
            cand &= ~(1 << v)
            if cand.bit_count() + 1 < n - len(chosen):
                return
            yield from rec(chosen + (v,), cand & g.adj[v])

    yield from rec((), cand0)


# ---------------------------------------------------------------------------
# named graphs


def path(order: int) -> Graph:
    return Graph.from_edges(order, ((i, i + 1) for i in range(order - 1)))


def cycle(order: int) -> Graph:
    return Graph.from_edges(order, ((i, (i + 1) % order) for i in range(order)))


def star(k: int) -> Graph:
    """``K_{1,k}`` with centre 0."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def perfect_matching(order: int) -> Graph:
    return Graph.from_edges(order, ((i, i + 1) for i in range(0, order - 1, 2)))


def complete_minus(order: int, removed: Iterable[tuple[int, int]]) -> Graph:
    return Graph.complete(order).remove_edges(removed)


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    offset = 0
    for h in graphs:
        edges.extend((u + offset, v + offset) for u, v in h.edges())
        offset += h.order
    return Graph.from_edges(offset, edges)


NAMED = {
    "K": lambda m: Graph.complete(m),
    "P": path,
    "C": cycle,
    "S": star,
    "E": Graph.empty,
}


def named_graph(name: str) -> Graph:
    """Parse names like ``K5``, ``P4``, ``C5``, ``S3`` (= K_{1,3}), ``E3`` (empty)."""
    head, tail = name[:1].upper(), name[1:]
    if head not in NAMED or not tail.isdigit():
        raise ValueError(f"unknown graph name {name!r}")
    return NAMED[head](int(tail))


# ---------------------------------------------------------------------------
# graph6 and edge-list formats


def _size_prefix(order: int) -> bytes:
    if order <= 62:
        return bytes([order + 63])
    return bytes([126, 63 + (order >> 12 & 63), 63 + (order >> 6 & 63), 63 + (order & 63)])


def to_graph6(g: Graph) -> str:
    out = bytearray(_size_prefix(g.order))
    acc = nbits = 0
    for j in range(1, g.order):
        for i in range(j):
            acc = acc << 1 | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(acc + 63)
                acc = nbits = 0
    if nbits:
        out.append((acc << (6 - nbits)) + 63)
    return out.decode("ascii")


def from_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    raw = data.encode("ascii")
    if not raw:
        raise ValueError("empty graph6 string")
    if any(not 63 <= c <= 126 for c in raw):
        raise ValueError("graph6 contains bytes outside 63..126")
    if raw[0] != 126:
        order, body = raw[0] - 63, raw[1:]
    elif len(raw) >= 4 and raw[1] != 126:
        order = (raw[1] - 63) << 12 | (raw[2] - 63) << 6 | (raw[3] - 63)
        body = raw[4:]
    else:
        raise ValueError("graph6 orders above 258047 are not supported")
    needed = (order * (order - 1) // 2 + 5) // 6
    if len(body) != needed:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {needed}")
    edges = []
    bit_iter = ((c - 63) >> s & 1 for c in body for s in range(5, -1, -1))
    for j in range(1, order):
        for i in range(j):
            if next(bit_iter):
                edges.append((i, j))
    return Graph.from_edges(order, edges)


def to_edge_list(g: Graph) -> str:
    lines = [f"p {g.order} {g.edge_count}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0][0] != "p" or len(lines[0]) != 3:
        raise ValueError("edge list must start with 'p <order> <edges>'")
    order, count = int(lines[0][1]), int(lines[0][2])
    edges = [(int(a), int(b)) for a, b in lines[1:]]
    if len(edges) != count:
        raise ValueError(f"header promises {count} edges, found {len(edges)}")
    g = Graph.from_edges(order, edges)
    if g.edge_count != count:
        raise ValueError("edge list contains repeated edges")
    return g


def parse_graph(text: str, fmt: str = "auto") -> Graph:
    """Read graph6 or edge-list text; ``auto`` decides by the first byte."""
    stripped = text.lstrip()
    if fmt == "auto":
        # graph6 of order 49 also starts with "p", but never with "p "
        fmt = "edgelist" if stripped.startswith(("p ", "p\t", "#")) else "graph6"
    if fmt == "graph6":
        return from_graph6(stripped.splitlines()[0])
    if fmt == "edgelist":
        return from_edge_list(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def all_pairs(order: int) -> list[tuple[int, int]]:
    return list(combinations(range(order), 2))
