"""Constructive versions of the structural lemmas behind the lower bound.

* :func:`mindeg_or_matching` -- a ``(k+1)``-set inducing no isolated vertex,
  or a proof that the graph is a matching (``k`` even only);
* :func:`disjoint_packing` -- ``t+1`` disjoint such sets in a dense graph;
* :func:`good_colouring` -- a colouring with no red ``K_{1,k}`` and no blue
  ``K_n`` built from a packing of the complement;
* :func:`redundant_vertices`, :func:`peel_T`, :func:`peel_cascade`.

Everything works on vertex bitmasks of the input graph so that returned sets
use the caller's labels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .arrowing import TwoColouring, verify_colouring
from .formulas import f_threshold, r_prime, ramsey_star_clique
from .graph import Graph, bits, complement, find_clique, from_graph6, to_graph6, to_mask


class PreconditionError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """A step the argument guarantees did not go through; never silently ignored."""


def _deg(g: Graph, v: int, alive: int) -> int:
    return (g.adj[v] & alive).bit_count()


def _edges_in(g: Graph, alive: int) -> int:
    return sum((g.adj[v] & alive).bit_count() for v in bits(alive)) // 2


def _min_deg_ok(g: Graph, x: int) -> bool:
    return all(g.adj[v] & x for v in bits(x))


def _matching_edges(g: Graph, alive: int) -> list[tuple[int, int]]:
    return [(u, v) for u in bits(alive) for v in bits(g.adj[u] & alive) if u < v]


def _mask_of_edges(edges) -> int:
    m = 0
    for u, v in edges:
        m |= 1 << u | 1 << v
    return m


# ---------------------------------------------------------------------------
# dichotomy


@dataclass(frozen=True)
class DichotomyResult:
    kind: str  # "mindeg_subset" or "matching"
    subset: tuple[int, ...] = ()
    matching_size: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "subset": list(self.subset), "matching_size": self.matching_size}

    @classmethod
    def from_dict(cls, d: dict) -> DichotomyResult:
        return cls(d["kind"], tuple(d["subset"]), d["matching_size"])


def _dichotomy(g: Graph, alive: int, k: int) -> tuple[str, int]:
    """Return ("subset", mask of k+1 vertices) or ("matching", 0) for ``g[alive]``."""
    verts = list(bits(alive))
    for v in verts:
        nb = g.adj[v] & alive
        if nb.bit_count() >= k:
            return "subset", 1 << v | to_mask(list(bits(nb))[:k])
    if all(_deg(g, v, alive) <= 1 for v in verts):
        if k % 2 == 1:
            # (k+1)/2 disjoint edges; enough of them since e >= C(k,2)+1
            return "subset", _mask_of_edges(_matching_edges(g, alive)[: (k + 1) // 2])
        return "matching", 0

    # here every degree is at most k-1 and k >= 3 (k = 2 ended above)
    v = next(u for u in verts if 2 <= _deg(g, u, alive) <= k - 1)
    rest = alive & ~(1 << v)
    assert _edges_in(g, rest) >= math.comb(k - 1, 2) + 1
    kind, y = _dichotomy(g, rest, k - 1)
    nv = g.adj[v] & alive
    v1, v2 = list(bits(nv))[:2]

    if kind == "subset":
        if nv & y:
            return "subset", y | 1 << v
        for u in bits(y):
            x = (y & ~(1 << u)) | 1 << v | 1 << v1
            if _min_deg_ok(g, x):
                return "subset", x
        # every swap failed: g[y] is a perfect matching and k is even
        pairs = _matching_edges(g, y)
        if k % 2 or len(pairs) * 2 != k or any(_deg(g, w, y) != 1 for w in bits(y)):
            raise ConstructionError("type (a) lift failed without g[Y] being a perfect matching")
        return "subset", _mask_of_edges(pairs[: (k - 2) // 2]) | 1 << v | 1 << v1 | 1 << v2

    # the rest of the graph is a matching
    pairs = _matching_edges(g, rest)
    matched = _mask_of_edges(pairs)
    if k % 2 == 1:
        return "subset", _mask_of_edges(pairs[: (k + 1) // 2])
    if nv & matched:
        u = (nv & matched & -(nv & matched)).bit_length() - 1
        own = next(p for p in pairs if u in p)
        others = [p for p in pairs if p != own][: k // 2 - 1]
        return "subset", _mask_of_edges([own] + others) | 1 << v
    return "subset", _mask_of_edges(pairs[: (k - 2) // 2]) | 1 << v | 1 << v1 | 1 << v2


def mindeg_or_matching(g: Graph, k: int) -> DichotomyResult:
    """Find ``k+1`` vertices inducing minimum degree at least 1, or report that ``g`` is a matching.

    Requires ``e(g) >= C(k,2) + 1``.  For odd ``k`` the matching outcome never
    occurs, because ``(k+1)/2`` matching edges already give such a set.
    """
    if k < 2:
        raise PreconditionError("k must be at least 2")
    if g.edge_count < math.comb(k, 2) + 1:
        raise PreconditionError(f"need at least C(k,2)+1 = {math.comb(k, 2) + 1} edges, got {g.edge_count}")
    kind, mask = _dichotomy(g, g.vertex_mask, k)
    if kind == "matching":
        return DichotomyResult("matching", matching_size=g.edge_count)
    subset = tuple(bits(mask))
    if len(subset) != k + 1 or not _min_deg_ok(g, mask):
        raise ConstructionError(f"constructed set {subset} is invalid")
    return DichotomyResult("mindeg_subset", subset=subset)


def oracle_mindeg_subset(g: Graph, k: int, *, max_order: int = 16) -> tuple[int, ...] | None:
    """Exhaustive scan of all ``(k+1)``-subsets."""
    if g.order > max_order:
        raise PreconditionError(f"oracle limited to {max_order} vertices")
    for combo in combinations(range(g.order), k + 1):
        x = to_mask(combo)
        if all(g.adj[v] & x for v in combo):
            return combo
    return None


def verify_dichotomy(g: Graph, k: int, res: DichotomyResult) -> bool:
    if res.kind == "matching":
        return all(row.bit_count() <= 1 for row in g.adj) and res.matching_size == g.edge_count
    x = to_mask(res.subset)
    return len(set(res.subset)) == k + 1 and _min_deg_ok(g, x)


# ---------------------------------------------------------------------------
# packing


@dataclass(frozen=True)
class Packing:
    host: Graph
    k: int
    parts: tuple[tuple[int, ...], ...]

    def verify(self) -> bool:
        seen = 0
        for part in self.parts:
            x = to_mask(part)
            if len(part) != self.k + 1 or x & seen or not _min_deg_ok(self.host, x):
                return False
            seen |= x
        return True

    def to_dict(self) -> dict:
        return {"k": self.k, "order": self.host.order, "host_graph6": to_graph6(self.host),
                "parts": [list(p) for p in self.parts]}

    @classmethod
    def from_dict(cls, d: dict) -> Packing:
        return cls(from_graph6(d["host_graph6"]), d["k"], tuple(tuple(p) for p in d["parts"]))


def packing_threshold(k: int, n: int, t: int) -> int:
    """Edge count ``Rt + C(t,2) + R'`` that guarantees ``t+1`` disjoint parts."""
    return ramsey_star_clique(k, n) * t + math.comb(t, 2) + r_prime(k, n)


def _check_packing_params(h: Graph, k: int, n: int, t: int) -> None:
    if k < 2 or n < 2 or t < 0:
        raise PreconditionError(f"bad parameters k={k}, n={n}, t={t}")
    if t > 0:
        if n < 3 * k + 3:
            raise PreconditionError(f"t >= 1 needs n >= 3k+3 = {3 * k + 3}")
        if t > f_threshold(k, n):
            raise PreconditionError(f"t={t} exceeds f(k,n)={f_threshold(k, n)}")
    r = ramsey_star_clique(k, n)
    if h.order != r + t:
        raise PreconditionError(f"host must have R+t = {r + t} vertices, has {h.order}")
    need = max(packing_threshold(k, n, t), math.comb(k, 2) + 1)
    if h.edge_count < need:
        raise PreconditionError(f"host has {h.edge_count} edges, needs {need}")


def disjoint_packing(h: Graph, k: int, n: int, t: int) -> Packing:
    """``t+1`` disjoint ``(k+1)``-sets of ``h``, each inducing minimum degree at least 1."""
    _check_packing_params(h, k, n, t)
    r = ramsey_star_clique(k, n)
    rp = r_prime(k, n)

    def last_part(alive: int) -> int:
        if _edges_in(h, alive) < max(rp, math.comb(k, 2) + 1):
            raise ConstructionError("residual graph fell below the edge threshold")
        kind, x = _dichotomy(h, alive, k)
        if kind == "matching":
            raise ConstructionError("residual graph is a matching with too many edges for its order")
        return x

    def pack(alive: int, t: int) -> list[int]:
        if t == 0:
            return [last_part(alive)]
        heavy = [v for v in bits(alive) if _deg(h, v, alive) >= (k + 1) * (t + 1)]
        if heavy:
            v = heavy[0]
            parts = pack(alive & ~(1 << v), t - 1)
            used = 0
            for p in parts:
                used |= p
            fresh = list(bits(h.adj[v] & alive & ~used))[:k]
            return parts + [1 << v | to_mask(fresh)]
        # Shrink to R+t-1 vertices by dropping a minimum-degree vertex; the
        # edge bound for t-1 survives because t <= n-2.
        w = min(bits(alive), key=lambda u: (_deg(h, u, alive), u))
        parts = pack(alive & ~(1 << w), t - 1)
        used = 0
        for p in parts:
            used |= p
        return parts + [last_part(alive & ~used)]

    masks = pack(h.vertex_mask, t)
    packing = Packing(h, k, tuple(tuple(bits(m)) for m in masks))
    if len(packing.parts) != t + 1 or not packing.verify():
        raise ConstructionError("packing failed verification")
    return packing


# ---------------------------------------------------------------------------
# good colouring from a complement packing


def colouring_partition(g: Graph, k: int, n: int) -> list[tuple[int, ...]] | None:
    """Partition into ``n-1`` classes whose inside edges can all be red, or None."""
    r = ramsey_star_clique(k, n)
    ell = g.order - r
    if ell < 0:
        raise PreconditionError(f"graph has {g.order} vertices, fewer than r = {r}")
    if ell > 0 and (n < 3 * k + 3 or ell > f_threshold(k, n)):
        raise PreconditionError(f"surplus {ell} outside 0..max(0, f(k,n)) for n >= 3k+3")
    comp = complement(g)
    if comp.edge_count < max(packing_threshold(k, n, ell), math.comb(k, 2) + 1):
        return None
    parts = list(disjoint_packing(comp, k, n, ell).parts)
    if len(parts) > n - 1:
        raise ConstructionError("more packing parts than colour classes")
    used = to_mask(v for p in parts for v in p)
    rest = [v for v in range(g.order) if not used >> v & 1]
    if len(rest) != k * (n - 2 - ell):
        raise ConstructionError("leftover vertices do not split into classes of size k")
    parts.extend(tuple(rest[i:i + k]) for i in range(0, len(rest), k))
    return parts


def good_colouring(g: Graph, k: int, n: int) -> TwoColouring | None:
    """Colour edges inside the classes of :func:`colouring_partition` red, the rest blue."""
    parts = colouring_partition(g, k, n)
    if parts is None:
        return None
    red = set()
    for part in parts:
        x = to_mask(part)
        for u in part:
            red.update((u, v) for v in bits(g.adj[u] & x) if u < v)
    col = TwoColouring(g, frozenset(red))
    check = verify_colouring(col, k, n)
    if not check.good:
        raise ConstructionError(f"constructed colouring is not good: {check}")
    return col


# ---------------------------------------------------------------------------
# redundancy and peeling


def redundant_vertices(g: Graph, n: int) -> tuple[int, ...]:
    """Vertices lying in no ``n``-clique."""
    if n < 1:
        raise ValueError("clique size must be at least 1")
    if n == 1:
        return ()
    return tuple(v for v in range(g.order) if find_clique(g, n - 1, within=g.adj[v]) is None)


@dataclass(frozen=True)
class PeelLayer:
    T: tuple[int, ...]
    B: tuple[int, ...]
    ell: int | None = None
    minimal: bool = True
    step: int | None = None
    m: int | None = None

    def to_dict(self) -> dict:
        return {"step": self.step, "T": list(self.T), "B": list(self.B), "ell": self.ell,
                "m": self.m, "minimal": self.minimal}

    @classmethod
    def from_dict(cls, d: dict) -> PeelLayer:
        return cls(tuple(d["T"]), tuple(d["B"]), d["ell"], d["minimal"], d["step"], d["m"])


def peel_conditions(g: Graph, t_mask: int, b_mask: int, k: int) -> bool:
    """``Delta(g[B]) < k`` and every vertex of ``T`` has at least ``k`` neighbours in ``B``."""
    return (all((g.adj[v] & b_mask).bit_count() < k for v in bits(b_mask))
            and all((g.adj[v] & b_mask).bit_count() >= k for v in bits(t_mask)))


def _peel_exact(g: Graph, k: int, within: int, minimise: bool = True) -> int | None:
    order = sorted(bits(within), key=lambda v: (-(g.adj[v] & within).bit_count(), v))
    best: list = [None]

    def rec(i: int, t: int, b: int, und: int) -> bool:
        if best[0] is not None and t.bit_count() >= best[0].bit_count():
            return False
        if i == len(order):
            best[0] = t
            return not minimise
        v = order[i]
        bit = 1 << v
        und2 = und & ~bit
        # v joins B: no B-vertex may reach k B-neighbours
        nb = g.adj[v] & b
        if nb.bit_count() < k and all((g.adj[u] & b).bit_count() < k - 1 for u in bits(nb)):
            # T-neighbours of v keep v as a potential B-neighbour, nothing to recheck
            if rec(i + 1, t, b | bit, und2):
                return True
        # v joins T: it and its T-neighbours must still reach k in B or undecided
        pool = b | und2
        if (g.adj[v] & pool).bit_count() >= k and all(
            (g.adj[u] & pool).bit_count() >= k for u in bits(g.adj[v] & t)
        ):
            if rec(i + 1, t | bit, b, und2):
                return True
        return False

    rec(0, 0, 0, within)
    return best[0]


def _peel_greedy(g: Graph, k: int, within: int) -> int | None:
    t, b = 0, within
    while True:
        heavy = [v for v in bits(b) if (g.adj[v] & b).bit_count() >= k]
        if not heavy:
            break
        v = max(heavy, key=lambda u: ((g.adj[u] & b).bit_count(), -u))
        t |= 1 << v
        b &= ~(1 << v)
    changed = True
    while changed:
        changed = False
        for v in bits(t):
            if (g.adj[v] & b).bit_count() >= k:
                continue
            nb = b | 1 << v
            if all((g.adj[u] & nb).bit_count() < k for u in bits(nb)):
                t &= ~(1 << v)
                b = nb
                changed = True
    return t if peel_conditions(g, t, b, k) else None


def peel_T(g: Graph, k: int, *, exact_limit: int = 20) -> PeelLayer | None:
    """Find ``T`` with ``Delta(g - T) < k`` and every ``T``-vertex sending ``k`` edges out.

    Exhaustive (minimum ``|T|``) up to ``exact_limit`` vertices; beyond that a
    greedy pass with repair, flagged ``minimal=False``, falling back to an
    exhaustive feasibility search if the greedy pass fails.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    full = g.vertex_mask
    minimal = g.order <= exact_limit
    if minimal:
        t = _peel_exact(g, k, full)
    else:
        t = _peel_greedy(g, k, full)
        if t is None:
            t = _peel_exact(g, k, full, minimise=False)
    if t is None:
        return None
    b = full & ~t
    return PeelLayer(tuple(bits(t)), tuple(bits(b)), minimal=minimal)


def peel_cascade(g: Graph, k: int, n: int, *, exact_limit: int = 20) -> list[PeelLayer]:
    """Iterated peeling with surplus ``l_i = |T_i| - r(K_{1,k}, K_{n-i})``.

    Stops when ``l_i <= m_i = max(0, f(k, n-i))``, at step ``n-3``, or when no
    nonempty ``T`` exists.  A diagnostic trace, not an arrowing proof.
    """
    if k < 2 or n < 3:
        raise ValueError("need k >= 2 and n >= 3")
    layers: list[PeelLayer] = []
    current = tuple(range(g.order))
    i = 1
    while True:
        sub = _induced_keep(g, current)
        layer = peel_T(sub, k, exact_limit=exact_limit)
        if layer is None or not layer.T:
            break
        t = tuple(current[v] for v in layer.T)
        b = tuple(current[v] for v in layer.B)
        ell = len(t) - (k * (n - i - 1) + 1)
        m = max(0, f_threshold(k, n - i))
        layers.append(PeelLayer(t, b, ell, layer.minimal, i, m))
        if ell <= m or i >= n - 3:
            break
        current = t
        i += 1
    return layers


def _induced_keep(g: Graph, verts: tuple[int, ...]) -> Graph:
    index = {v: i for i, v in enumerate(verts)}
    mask = to_mask(verts)
    adj = []
    for v in verts:
        row = 0
        for u in bits(g.adj[v] & mask):
            row |= 1 << index[u]
        adj.append(row)
    return Graph(len(verts), tuple(adj))
