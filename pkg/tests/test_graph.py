from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest
from conftest import graphs, random_graph, to_nx
from hypothesis import given, settings
from hypothesis import strategies as st

from sizeramsey.canon import (
    EnumerationLimitError,
    canonical_form,
    canonical_form_exhaustive,
    enumerate_graphs,
)
from sizeramsey.graph import (
    Graph,
    complement,
    complete_minus,
    contains_clique,
    cycle,
    degrees,
    from_edge_list,
    from_graph6,
    induced,
    is_matching,
    max_degree,
    min_degree,
    parse_graph,
    path,
    perfect_matching,
    star,
    to_edge_list,
    to_graph6,
)

K5 = Graph.complete(5)


# --- complement, induced, degrees -------------------------------------------


def test_complement_of_complete_is_empty():
    assert complement(K5) == Graph.empty(5)


def test_complement_of_empty_is_triangle():
    assert complement(Graph.empty(3)) == Graph.complete(3)


def test_complement_of_k5_minus_edge():
    c = complement(K5.remove_edges([(1, 3)]))
    assert c.edges() == [(1, 3)]
    assert degrees(c) == [0, 1, 0, 1, 0]


def test_induced_examples():
    for x in itertools.combinations(range(5), 3):
        assert induced(K5, x) == Graph.complete(3)
    sub = induced(path(4), [0, 2, 3])
    assert sub.order == 3 and sub.edges() == [(1, 2)]
    g = cycle(6)
    assert induced(g, range(6)) == g
    with pytest.raises(ValueError):
        induced(g, [])


def test_degree_examples():
    assert max_degree(star(4)) == 4
    assert min_degree(complete_minus(5, [(0, 1), (2, 3)])) == 3
    assert degrees(Graph.complete(3)) == [2, 2, 2]


def test_clique_examples():
    assert contains_clique(cycle(5), 3) == (False, None)
    found, witness = contains_clique(complete_minus(5, [(0, 1), (2, 3)]), 3)
    assert found and len(witness) == 3
    assert contains_clique(Graph.empty(1), 1)[0]


def test_matching_examples():
    assert is_matching(perfect_matching(6))
    assert not is_matching(path(4))
    assert is_matching(Graph.empty(4))


@settings(max_examples=200, deadline=None)
@given(graphs(max_order=10))
def test_complement_involution(g):
    assert complement(complement(g)) == g
    assert g.edge_count + complement(g).edge_count == g.order * (g.order - 1) // 2


@settings(max_examples=200, deadline=None)
@given(graphs(max_order=10), st.data())
def test_induced_recount_by_degree_sum(g, data):
    x = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1))
    sub = induced(g, x)
    inside = sum(sum(1 for w in g.neighbours(v) if w in x) for v in x)
    assert sub.order == len(x)
    assert 2 * sub.edge_count == inside


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=9), st.integers(1, 5))
def test_clique_matches_networkx(g, n):
    found, witness = contains_clique(g, n)
    best = max((len(c) for c in nx.find_cliques(to_nx(g))), default=0)
    assert found == (best >= n)
    if found:
        assert all(g.has_edge(u, v) for u, v in itertools.combinations(witness, 2))


# --- formats -----------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(graphs(max_order=12))
def test_graph6_agrees_with_networkx(g):
    ours = to_graph6(g)
    theirs = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert ours == theirs
    assert from_graph6(ours) == g


def test_graph6_large_orders_round_trip():
    rng = random.Random(7)
    for order in (62, 63, 64):
        g = random_graph(rng, order, 0.3)
        text = to_graph6(g)
        assert text == nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
        assert from_graph6(text) == g


def test_graph6_known_strings():
    assert to_graph6(Graph.complete(4)) == "C~"
    assert to_graph6(Graph.empty(1)) == "@"


@settings(max_examples=100, deadline=None)
@given(graphs(max_order=12))
def test_edge_list_round_trip(g):
    text = to_edge_list(g)
    assert text.startswith(f"p {g.order} {g.edge_count}")
    assert from_edge_list(text) == g
    assert parse_graph(text) == g
    assert parse_graph(to_graph6(g)) == g


def test_order_limit():
    with pytest.raises(ValueError):
        Graph.empty(65)


# --- canonical form ----------------------------------------------------------


def test_canonical_examples():
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    p4b = Graph.from_edges(4, [(2, 0), (0, 3), (3, 1)])
    assert canonical_form(p4) == canonical_form(p4b)
    assert canonical_form(Graph.complete(3)) != canonical_form(path(3))


def test_eleven_classes_on_four_vertices():
    pairs = list(itertools.combinations(range(4), 2))
    forms = set()
    for mask in range(1 << 6):
        g = Graph.from_edges(4, [p for i, p in enumerate(pairs) if mask >> i & 1])
        forms.add(canonical_form(g))
    assert len(forms) == 11


@settings(max_examples=60, deadline=None)
@given(graphs(max_order=8), st.randoms(use_true_random=False))
def test_canonical_form_relabel_invariant(g, rnd):
    ref = canonical_form(g)
    assert canonical_form_exhaustive(g) == canonical_form_exhaustive(g.relabel(list(range(g.order))))
    for _ in range(100):
        perm = list(range(g.order))
        rnd.shuffle(perm)
        assert canonical_form(g.relabel(perm)) == ref


@settings(max_examples=150, deadline=None)
@given(graphs(min_order=5, max_order=7), graphs(min_order=5, max_order=7))
def test_canonical_form_decides_isomorphism(a, b):
    same = a.order == b.order and nx.is_isomorphic(to_nx(a), to_nx(b))
    assert (canonical_form(a) == canonical_form(b)) == same
    assert (canonical_form_exhaustive(a) == canonical_form_exhaustive(b)) == same


def test_canonical_form_on_symmetric_large_graphs():
    for g in (star(20), cycle(30), perfect_matching(40)):
        perm = list(range(g.order))
        random.Random(1).shuffle(perm)
        assert canonical_form(g) == canonical_form(g.relabel(perm))


# --- enumeration -------------------------------------------------------------


def test_enumeration_examples():
    assert [g.edges() for g in enumerate_graphs(1)] == [[(0, 1)]]
    assert len(list(enumerate_graphs(2))) == 2
    three = list(enumerate_graphs(3, min_edges=3))
    assert len(three) == 3
    assert sorted(g.order for g in three) == [3, 4, 4]


def test_enumeration_ceiling():
    with pytest.raises(EnumerationLimitError):
        list(enumerate_graphs(13))


def test_connected_counts_match_known_sequence():
    # connected graphs by edge count, 1..9 edges (OEIS A002905)
    counts = [0] * 10
    for g in enumerate_graphs(9):
        counts[g.edge_count] += 1
    assert counts[1:] == [1, 1, 3, 5, 12, 30, 79, 227, 710]


def test_counts_by_order(graphs_upto_7):
    counts = [0] * 8
    for g in graphs_upto_7:
        counts[g.order] += 1
    assert counts[1:] == [1, 2, 4, 11, 34, 156, 1044]


def _brute_force_classes(max_edges: int, connected_only: bool) -> set[str]:
    """Every labelled graph without isolated vertices, reduced by networkx isomorphism."""
    reps: list[nx.Graph] = []
    for order in range(2, 2 * max_edges + 1):
        pairs = list(itertools.combinations(range(order), 2))
        for m in range(1, max_edges + 1):
            for chosen in itertools.combinations(pairs, m):
                h = nx.Graph(chosen)
                if h.number_of_nodes() != order:
                    continue
                if connected_only and not nx.is_connected(h):
                    continue
                if not any(nx.is_isomorphic(h, r) for r in reps if r.number_of_edges() == m
                           and r.number_of_nodes() == order):
                    reps.append(h)
    return {canonical_form(Graph.from_edges(r.number_of_nodes(), r.edges())) for r in reps}


@pytest.mark.parametrize("connected_only", [True, False])
@pytest.mark.parametrize("max_edges", [1, 2, 3, 4])
def test_enumeration_matches_brute_force(max_edges, connected_only):
    ours = list(enumerate_graphs(max_edges, connected_only=connected_only))
    forms = [canonical_form(g) for g in ours]
    assert len(forms) == len(set(forms))
    assert set(forms) == _brute_force_classes(max_edges, connected_only)


def test_enumeration_five_edges_matches_networkx_atlas():
    # graph_atlas_g lists all graphs up to 7 vertices; 5 edges need at most 10 vertices
    # but the connected ones fit in 6, and the disconnected ones are checked above.
    atlas = {canonical_form(Graph.from_edges(h.number_of_nodes(), h.edges()))
             for h in nx.graph_atlas_g()
             if h.number_of_edges() <= 5 and h.number_of_nodes() > 1 and nx.is_connected(h)}
    ours = [canonical_form(g) for g in enumerate_graphs(5)]
    assert len(ours) == len(set(ours))
    assert set(ours) == atlas
