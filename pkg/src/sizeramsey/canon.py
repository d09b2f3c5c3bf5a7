"""Canonical labelling and isomorph-free enumeration of small graphs.

The canonical form is found by colour refinement plus individualisation,
taking the lexicographically largest adjacency certificate over the leaves
of the search tree.  Automorphisms discovered at equal leaves prune sibling
branches lying in the same orbit of the pointwise prefix stabiliser.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .graph import Graph, bits, components, to_graph6

DEFAULT_EDGE_CEILING = 12
DEFAULT_ORDER_CEILING = 8


class EnumerationLimitError(ValueError):
    """Requested enumeration exceeds the configured ceiling."""


def _refine(adj: tuple[int, ...], cells: list[int]) -> list[int]:
    # Split every cell by neighbour counts into every cell until stable.
    while True:
        new = []
        for cell in cells:
            if cell & (cell - 1) == 0:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], int] = {}
            for v in bits(cell):
                key = tuple((adj[v] & c).bit_count() for c in cells)
                groups[key] = groups.get(key, 0) | 1 << v
            new.extend(groups[key] for key in sorted(groups))
        if len(new) == len(cells):
            return new
        cells = new


def _certificate(adj: tuple[int, ...], lab: list[int]) -> tuple[int, ...]:
    order = len(adj)
    inv = [0] * order
    for v, pos in enumerate(lab):
        inv[pos] = v
    rows = []
    for pos in range(order):
        row = 0
        for u in bits(adj[inv[pos]]):
            row |= 1 << lab[u]
        rows.append(row)
    return tuple(rows)


def _shared(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    i = 0
    while i < len(a) and i < len(b) and a[i] == b[i]:
        i += 1
    return i


class _Find:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def canonical_labeling(g: Graph) -> tuple[list[int], list[tuple[int, ...]]]:
    """Return ``(lab, automorphisms)``; ``lab[v]`` is the canonical position of ``v``.

    The automorphism list holds generators found during the search (not
    necessarily a full generating set of the group).
    """
    adj = g.adj
    order = g.order
    best: list = [None, None, None]  # certificate, labelling, prefix
    first: list = [None, None, None]
    auts: list[tuple[int, ...]] = []

    def record_aut(lab_a: list[int], lab_b: list[int]) -> None:
        inv_b = [0] * order
        for v, pos in enumerate(lab_b):
            inv_b[pos] = v
        perm = tuple(inv_b[lab_a[v]] for v in range(order))
        if any(perm[v] != v for v in range(order)) and perm not in auts:
            auts.append(perm)

    def leaf(cells: list[int], prefix: tuple[int, ...]) -> int | None:
        # On a match the current branch is the image of a finished one, so
        # the search can back up to the deepest shared ancestor.
        lab = [0] * order
        for pos, cell in enumerate(cells):
            lab[cell.bit_length() - 1] = pos
        cert = _certificate(adj, lab)
        if first[0] is None:
            first[:] = [cert, lab, prefix]
            best[:] = [cert, lab, prefix]
            return None
        for known in (first, best):
            if cert == known[0]:
                record_aut(known[1], lab)
                return _shared(prefix, known[2])
        if cert > best[0]:
            best[:] = [cert, lab, prefix]
        return None

    def search(cells: list[int], prefix: tuple[int, ...]) -> int | None:
        cells = _refine(adj, cells)
        if len(cells) == order:
            return leaf(cells, prefix)
        ti = next(i for i, c in enumerate(cells) if c & (c - 1))
        target = cells[ti]
        explored: list[int] = []
        for v in bits(target):
            if explored:
                stab = [a for a in auts if all(a[p] == p for p in prefix)]
                if stab:
                    uf = _Find(order)
                    for a in stab:
                        for x in range(order):
                            uf.union(x, a[x])
                    rv = uf.find(v)
                    if any(uf.find(u) == rv for u in explored):
                        continue
            explored.append(v)
            child = cells[:ti] + [1 << v, target & ~(1 << v)] + cells[ti + 1:]
            back = search(child, prefix + (v,))
            if back is not None and back < len(prefix):
                return back
        return None

    search([g.vertex_mask], ())
    return best[1], auts


def canonical_form(g: Graph) -> str:
    """Isomorphism certificate: graph6 string of the canonically relabelled graph."""
    lab, _ = canonical_labeling(g)
    return to_graph6(g.relabel(lab))


def canonical_graph(g: Graph) -> Graph:
    lab, _ = canonical_labeling(g)
    return g.relabel(lab)


def canonical_form_exhaustive(g: Graph) -> str:
    """Reference certificate by maximising over all ``order!`` labellings (order <= 8)."""
    if g.order > 8:
        raise EnumerationLimitError("exhaustive canonical form is limited to 8 vertices")
    best = max(_certificate(g.adj, list(p)) for p in permutations(range(g.order)))
    edges = [(u, v) for u in range(g.order) for v in bits(best[u]) if u < v]
    return to_graph6(Graph.from_edges(g.order, edges))


# ---------------------------------------------------------------------------
# enumeration


def _canonical_with_group(g: Graph) -> tuple[str, Graph, list[tuple[int, ...]]]:
    """Canonical key, canonical graph, and automorphism generators in canonical labels."""
    lab, auts = canonical_labeling(g)
    inv = [0] * g.order
    for v, pos in enumerate(lab):
        inv[pos] = v
    moved = [tuple(lab[a[inv[p]]] for p in range(g.order)) for a in auts]
    c = g.relabel(lab)
    return to_graph6(c), c, moved


def _pair_orbit_reps(order: int, pairs: list[tuple[int, int]], auts) -> list[tuple[int, int]]:
    if not auts:
        return pairs
    index = {pr: i for i, pr in enumerate(pairs)}
    uf = _Find(len(pairs))
    for a in auts:
        for i, (u, v) in enumerate(pairs):
            x, y = a[u], a[v]
            uf.union(i, index[(x, y) if x < y else (y, x)])
    return [pr for i, pr in enumerate(pairs) if uf.find(i) == i]


def _vertex_orbit_reps(order: int, auts) -> list[int]:
    uf = _Find(order)
    for a in auts:
        for x in range(order):
            uf.union(x, a[x])
    return [v for v in range(order) if uf.find(v) == v]


def _grow(parents, extend) -> tuple[tuple[Graph, list], ...]:
    # Children of automorphic edge additions are isomorphic; one per orbit suffices.
    seen: dict[str, tuple[Graph, list]] = {}
    for g, auts in parents:
        for child in extend(g, auts):
            key, c, caut = _canonical_with_group(child)
            if key not in seen:
                seen[key] = (c, caut)
    return tuple(seen.values())


def _non_edges(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.order) for v in range(u + 1, g.order) if not g.has_edge(u, v)]


@lru_cache(maxsize=None)
def _connected_level_aut(edges: int) -> tuple[tuple[Graph, list], ...]:
    if edges == 1:
        _, c, caut = _canonical_with_group(Graph.from_edges(2, [(0, 1)]))
        return ((c, caut),)

    def extend(g: Graph, auts):
        for u, v in _pair_orbit_reps(g.order, _non_edges(g), auts):
            yield g.add_edge(u, v)
        if g.order < 64:
            grown = g.add_vertices(1)
            for u in _vertex_orbit_reps(g.order, auts):
                yield grown.add_edge(u, g.order)

    return _grow(_connected_level_aut(edges - 1), extend)


def _connected_level(edges: int) -> tuple[Graph, ...]:
    """Canonical representatives of connected graphs with exactly ``edges`` edges (>= 1)."""
    return tuple(g for g, _ in _connected_level_aut(edges))


@lru_cache(maxsize=None)
def _order_level_aut(order: int, edges: int) -> tuple[tuple[Graph, list], ...]:
    if edges == 0:
        return ((Graph.empty(order), [tuple((i + 1) % order for i in range(order)),
                                      (1, 0) + tuple(range(2, order))] if order > 1 else []),)

    def extend(g: Graph, auts):
        for u, v in _pair_orbit_reps(order, _non_edges(g), auts):
            yield g.add_edge(u, v)

    return _grow(_order_level_aut(order, edges - 1), extend)


def _order_level(order: int, edges: int) -> tuple[Graph, ...]:
    """Canonical representatives of all graphs on ``order`` vertices with ``edges`` edges."""
    return tuple(g for g, _ in _order_level_aut(order, edges))


def _multisets(levels: list[tuple[int, Graph]], budget: int, start: int) -> Iterator[list[Graph]]:
    yield []
    for i in range(start, len(levels)):
        e, h = levels[i]
        if e > budget:
            break
        for rest in _multisets(levels, budget - e, i):
            yield [h] + rest


def enumerate_graphs(
    max_edges: int,
    connected_only: bool = True,
    no_isolated: bool = True,
    *,
    min_edges: int = 0,
    order: int | None = None,
    edge_ceiling: int = DEFAULT_EDGE_CEILING,
    order_ceiling: int = DEFAULT_ORDER_CEILING,
) -> Iterator[Graph]:
    """Yield one representative per isomorphism class, ascending in edge count.

    Without ``order`` the graphs are unrestricted in order (which requires
    ``no_isolated`` unless ``connected_only``, where the only graph with an
    isolated vertex is ``K_1``).  With ``order`` every graph on exactly that
    many vertices is considered before applying the filters.
    """
    if order is not None:
        if order > order_ceiling:
            raise EnumerationLimitError(f"order {order} exceeds ceiling {order_ceiling}")
        top = min(max_edges, order * (order - 1) // 2)
        for e in range(max(min_edges, 0), top + 1):
            for g in _order_level(order, e):
                if connected_only and len(components(g)) != 1:
                    continue
                if no_isolated and any(row == 0 for row in g.adj):
                    continue
                yield g
        return

    if max_edges > edge_ceiling:
        raise EnumerationLimitError(f"max_edges {max_edges} exceeds ceiling {edge_ceiling}")
    if not connected_only and not no_isolated:
        raise ValueError("graphs with isolated vertices are unbounded; pass order=")
    if min_edges <= 0 and not no_isolated:
        yield Graph.empty(1)
    if connected_only:
        for e in range(max(min_edges, 1), max_edges + 1):
            yield from _connected_level(e)
        return

    levels = [(e, h) for e in range(1, max_edges + 1) for h in _connected_level(e)]
    found: list[tuple[int, int, Graph]] = []
    for idx, parts in enumerate(_multisets(levels, max_edges, 0)):
        if not parts:
            continue
        total = sum(h.edge_count for h in parts)
        if total < min_edges:
            continue
        u = parts[0]
        for h in parts[1:]:
            u = _union(u, h)
        found.append((total, idx, u))
    found.sort(key=lambda item: (item[0], item[1]))
    for _, _, g in found:
        yield g


def _union(a: Graph, b: Graph) -> Graph:
    shifted = tuple(row << a.order for row in b.adj)
    return Graph(a.order + b.order, a.adj + shifted)
