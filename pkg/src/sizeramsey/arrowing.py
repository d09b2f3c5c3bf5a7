"""Deciding ``F -> (K_{1,k}, K_n)`` exactly.

A colouring of ``F`` avoids a red ``K_{1,k}`` iff every vertex has red degree
at most ``k - 1``, and avoids a blue ``K_n`` iff every ``n``-clique of ``F``
contains a red edge.  So ``F`` fails to arrow iff some red edge set of
maximum degree ``k - 1`` hits every ``n``-clique of ``F``.  The engine
searches for such a set clique by clique, propagating

* red degree ``k - 1`` at a vertex  =>  its undecided edges are blue,
* a clique with no red edge and one undecided edge  =>  that edge is red,

and runs per connected component: both target graphs are connected, so a
colouring is good iff its restriction to every component is good, and ``F``
arrows iff some component does.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .graph import Graph, bits, components, iter_cliques

DEFAULT_EDGE_BUDGET = 32
BRUTE_FORCE_EDGE_CEILING = 20

_UNDECIDED, _RED, _BLUE = 0, 1, 2


def _check_params(k: int, n: int) -> None:
    if k < 2 or n < 2:
        raise ValueError(f"need k >= 2 and n >= 2, got k={k}, n={n}")


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class TwoColouring:
    """Red/blue colouring of every edge of ``host``; edges not in ``red`` are blue."""

    host: Graph
    red: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "red", frozenset(_edge_key(u, v) for u, v in self.red))
        for u, v in self.red:
            if not self.host.has_edge(u, v):
                raise ValueError(f"coloured pair {{{u},{v}}} is not an edge of the host")

    @property
    def blue(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.host.edges()) - self.red

    def colour(self, u: int, v: int) -> str:
        if not self.host.has_edge(u, v):
            raise KeyError(f"{{{u},{v}}} is not an edge")
        return "red" if _edge_key(u, v) in self.red else "blue"

    def red_graph(self) -> Graph:
        return Graph.from_edges(self.host.order, self.red)

    def blue_graph(self) -> Graph:
        return Graph.from_edges(self.host.order, self.blue)

    def to_dict(self) -> dict:
        edges = self.host.edges()
        return {
            "order": self.host.order,
            "edges": [list(e) for e in edges],
            "red": [i for i, e in enumerate(edges) if e in self.red],
        }

    @classmethod
    def from_dict(cls, data: dict) -> TwoColouring:
        edges = [tuple(e) for e in data["edges"]]
        order = data.get("order", 1 + max((max(e) for e in edges), default=0))
        host = Graph.from_edges(order, edges)
        return cls(host, frozenset(edges[i] for i in data["red"]))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class ColouringCheck:
    kind: str  # "good", "red_star" or "blue_clique"
    witness: tuple[int, ...] = ()

    @property
    def good(self) -> bool:
        return self.kind == "good"


def verify_colouring(c: TwoColouring, k: int, n: int) -> ColouringCheck:
    """Classify a colouring; witnesses are ``(centre, leaf, ...)`` or the clique's vertices."""
    _check_params(k, n)
    red = c.red_graph()
    for v in range(red.order):
        if red.degree(v) >= k:
            return ColouringCheck("red_star", (v,) + tuple(red.neighbours(v)[:k]))
    blue = c.blue_graph()
    for clique in iter_cliques(blue, n):
        return ColouringCheck("blue_clique", clique)
    return ColouringCheck("good")


@dataclass
class SearchStats:
    nodes: int = 0
    dead_ends: int = 0
    components_searched: int = 0
    cliques: int = 0

    def merge(self, other: SearchStats) -> None:
        self.nodes += other.nodes
        self.dead_ends += other.dead_ends
        self.components_searched += other.components_searched
        self.cliques += other.cliques


@dataclass(frozen=True)
class ArrowDecision:
    """Verdict with evidence.

    ``verdict`` is True (arrows), False (a good colouring exists and is the
    certificate) or None when the search budget was exceeded.
    """

    verdict: bool | None
    k: int
    n: int
    certificate: TwoColouring | None = None
    stats: SearchStats = field(default_factory=SearchStats)
    reason: str = ""

    @property
    def budget_exceeded(self) -> bool:
        return self.verdict is None

    @property
    def status(self) -> str:
        return {True: "arrows", False: "not_arrows", None: "budget_exceeded"}[self.verdict]

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "verdict": self.verdict,
            "k": self.k,
            "n": self.n,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "stats": {
                "nodes": self.stats.nodes,
                "dead_ends": self.stats.dead_ends,
                "components_searched": self.stats.components_searched,
                "cliques": self.stats.cliques,
            },
            "reason": self.reason,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ArrowDecision:
        cert = TwoColouring.from_dict(d["certificate"]) if d["certificate"] else None
        return cls(d["verdict"], d["k"], d["n"], cert, SearchStats(**d["stats"]), d["reason"])


class BudgetExceeded(Exception):
    pass


class _ComponentSearch:
    """Backtracking search for a red clique-hitting set with red degree < k."""

    def __init__(self, g: Graph, comp: int, k: int, n: int, node_limit: int | None):
        self.k = k
        self.node_limit = node_limit
        verts = list(bits(comp))
        self.ends: list[tuple[int, int]] = [(u, v) for u in verts for v in bits(g.adj[u] & comp) if u < v]
        index = {e: i for i, e in enumerate(self.ends)}
        self.inc: dict[int, list[int]] = {v: [] for v in verts}
        for i, (u, v) in enumerate(self.ends):
            self.inc[u].append(i)
            self.inc[v].append(i)
        self.cliques: list[tuple[int, ...]] = []
        for cl in iter_cliques(g, n, within=comp):
            self.cliques.append(tuple(index[(a, b)] for a, b in combinations(cl, 2)))
        self.ecl: list[list[int]] = [[] for _ in self.ends]
        for q, cl in enumerate(self.cliques):
            for e in cl:
                self.ecl[e].append(q)
        self.col = [_UNDECIDED] * len(self.ends)
        self.rdeg = {v: 0 for v in verts}
        self.und = {v: len(self.inc[v]) for v in verts}
        self.cl_red = [0] * len(self.cliques)
        self.cl_und = [len(cl) for cl in self.cliques]
        self.stats = SearchStats(components_searched=1, cliques=len(self.cliques))

    # -- assignment with trail -------------------------------------------

    def _apply(self, e: int, c: int, queue: list) -> bool:
        """Set edge colour and update counters; return False on conflict (state stays consistent)."""
        self.col[e] = c
        ok = True
        u, v = self.ends[e]
        self.und[u] -= 1
        self.und[v] -= 1
        if c == _RED:
            for w in (u, v):
                self.rdeg[w] += 1
                if self.rdeg[w] > self.k - 1:
                    ok = False
                elif self.rdeg[w] == self.k - 1:
                    queue.extend((e2, _BLUE) for e2 in self.inc[w] if self.col[e2] == _UNDECIDED)
            for q in self.ecl[e]:
                self.cl_red[q] += 1
                self.cl_und[q] -= 1
        else:
            for q in self.ecl[e]:
                self.cl_und[q] -= 1
                if self.cl_red[q] == 0:
                    if self.cl_und[q] == 0:
                        ok = False
                    elif self.cl_und[q] == 1:
                        for e2 in self.cliques[q]:
                            if self.col[e2] == _UNDECIDED:
                                queue.append((e2, _RED))
                                break
        return ok

    def _undo(self, e: int) -> None:
        c = self.col[e]
        u, v = self.ends[e]
        self.und[u] += 1
        self.und[v] += 1
        if c == _RED:
            self.rdeg[u] -= 1
            self.rdeg[v] -= 1
            for q in self.ecl[e]:
                self.cl_red[q] -= 1
                self.cl_und[q] += 1
        else:
            for q in self.ecl[e]:
                self.cl_und[q] += 1
        self.col[e] = _UNDECIDED

    def assign(self, e: int, c: int, trail: list[int]) -> bool:
        queue = [(e, c)]
        while queue:
            e, c = queue.pop()
            cur = self.col[e]
            if cur != _UNDECIDED:
                if cur != c:
                    return False
                continue
            trail.append(e)
            if not self._apply(e, c, queue):
                return False
        return True

    def rollback(self, trail: list[int]) -> None:
        for e in reversed(trail):
            self._undo(e)
        trail.clear()

    # -- search ------------------------------------------------------------

    def _pick_clique(self) -> int | None:
        best, best_und = None, None
        for q in range(len(self.cliques)):
            if self.cl_red[q] == 0 and (best_und is None or self.cl_und[q] < best_und):
                best, best_und = q, self.cl_und[q]
                if best_und <= 1:
                    break
        return best

    def _solve(self) -> bool:
        self.stats.nodes += 1
        if self.node_limit is not None and self.stats.nodes > self.node_limit:
            raise BudgetExceeded
        q = self._pick_clique()
        if q is None:
            return True
        options = [e for e in self.cliques[q] if self.col[e] == _UNDECIDED]
        options.sort(key=lambda e: (-(self.und[self.ends[e][0]] + self.und[self.ends[e][1]]), self.ends[e]))
        blues: list[int] = []
        for e in options:
            trail: list[int] = []
            if self.assign(e, _RED, trail) and self._solve():
                return True
            self.rollback(trail)
            # every later sibling has e blue
            if not self.assign(e, _BLUE, blues):
                break
        self.rollback(blues)
        self.stats.dead_ends += 1
        return False

    def run(self) -> frozenset[tuple[int, int]] | None:
        """Red edge set of a good colouring of this component, or None if it arrows."""
        if not self._solve():
            return None
        return frozenset(self.ends[e] for e, c in enumerate(self.col) if c == _RED)


def arrows(
    f: Graph,
    k: int,
    n: int,
    *,
    max_edges: int = DEFAULT_EDGE_BUDGET,
    node_limit: int | None = None,
) -> ArrowDecision:
    """Decide ``f -> (K_{1,k}, K_n)``."""
    _check_params(k, n)
    if f.edge_count > max_edges:
        return ArrowDecision(None, k, n, reason=f"{f.edge_count} edges exceeds budget {max_edges}")
    stats = SearchStats()
    red: set[tuple[int, int]] = set()
    for comp in components(f):
        if comp & (comp - 1) == 0:
            continue
        search = _ComponentSearch(f, comp, k, n, node_limit)
        try:
            part = search.run()
        except BudgetExceeded:
            stats.merge(search.stats)
            return ArrowDecision(None, k, n, stats=stats, reason=f"node limit {node_limit} reached")
        stats.merge(search.stats)
        if part is None:
            return ArrowDecision(True, k, n, stats=stats, reason="every colouring has a red star or blue clique")
        red |= part
    cert = TwoColouring(f, frozenset(red))
    check = verify_colouring(cert, k, n)
    if not check.good:
        raise AssertionError(f"engine produced a bad certificate: {check}")
    return ArrowDecision(False, k, n, certificate=cert, stats=stats, reason="good colouring found")


# ---------------------------------------------------------------------------
# independent oracle


def _oracle_tables(f: Graph, k: int, n: int):
    edges = f.edges()
    index = {e: i for i, e in enumerate(edges)}
    incident = [0] * f.order
    for i, (u, v) in enumerate(edges):
        incident[u] |= 1 << i
        incident[v] |= 1 << i
    clique_masks = []
    for verts in combinations(range(f.order), n):
        pairs = list(combinations(verts, 2))
        if all(f.has_edge(a, b) for a, b in pairs):
            clique_masks.append(sum(1 << index[p] for p in pairs))
    return edges, incident, clique_masks


def brute_force_good_colouring(
    f: Graph, k: int, n: int, *, ceiling: int = BRUTE_FORCE_EDGE_CEILING
) -> TwoColouring | None:
    """Scan all ``2^e(f)`` colourings (bit i set = edge i red); return the first good one."""
    _check_params(k, n)
    m = f.edge_count
    if m > ceiling:
        raise ValueError(f"brute force limited to {ceiling} edges, graph has {m}")
    edges, incident, clique_masks = _oracle_tables(f, k, n)
    total = 1 << m
    chunk = 1 << 16
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.uint32)
        bad = np.zeros(masks.shape, dtype=bool)
        for inc in incident:
            if inc.bit_count() >= k:
                bad |= np.bitwise_count(masks & np.uint32(inc)) >= k
        for cm in clique_masks:
            bad |= (masks & np.uint32(cm)) == 0
        good = np.flatnonzero(~bad)
        if good.size:
            mask = int(masks[good[0]])
            return TwoColouring(f, frozenset(edges[i] for i in range(m) if mask >> i & 1))
    return None


def brute_force_arrows(f: Graph, k: int, n: int, *, ceiling: int = BRUTE_FORCE_EDGE_CEILING) -> bool:
    return brute_force_good_colouring(f, k, n, ceiling=ceiling) is None


def restrict_colouring(c: TwoColouring, small: Graph, embedding: list[int]) -> TwoColouring:
    """Pull a colouring of a host back along an embedding of ``small`` into it."""
    red = [(u, v) for u, v in small.edges() if _edge_key(embedding[u], embedding[v]) in c.red]
    return TwoColouring(small, frozenset(red))


def check_embedding(f_small: Graph, f_big: Graph, embedding: list[int]) -> None:
    if len(embedding) != f_small.order or len(set(embedding)) != f_small.order:
        raise ValueError("embedding must be an injective map on the small graph's vertices")
    for x in embedding:
        if not 0 <= x < f_big.order:
            raise ValueError(f"embedding target {x} outside the big graph")
    for u, v in f_small.edges():
        if not f_big.has_edge(embedding[u], embedding[v]):
            raise ValueError(f"edge {{{u},{v}}} does not map to an edge")


def is_subgraph_monotone_witness(
    f_small: Graph, f_big: Graph, k: int, n: int, embedding: list[int] | None = None
) -> bool:
    """Check that arrowing is consistent along a subgraph embedding.

    A good colouring of ``f_big`` restricted to ``f_small`` must be good, so
    ``arrows(f_small)`` forces ``arrows(f_big)``.  Returns True when both the
    verdicts and the restricted certificate agree with that rule.
    """
    if embedding is None:
        embedding = list(range(f_small.order))
    check_embedding(f_small, f_big, embedding)
    big = arrows(f_big, k, n)
    small = arrows(f_small, k, n)
    if big.verdict is None or small.verdict is None:
        raise BudgetExceeded("cannot compare verdicts past the search budget")
    if big.verdict:
        return True
    restricted = restrict_colouring(big.certificate, f_small, embedding)
    return verify_colouring(restricted, k, n).good and small.verdict is False
