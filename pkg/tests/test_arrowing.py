from __future__ import annotations

import itertools
import json
import random

import pytest
from conftest import graphs, random_graph
from hypothesis import given, settings
from hypothesis import strategies as st

from sizeramsey.arrowing import (
    ArrowDecision,
    TwoColouring,
    arrows,
    brute_force_arrows,
    brute_force_good_colouring,
    is_subgraph_monotone_witness,
    verify_colouring,
)
from sizeramsey.formulas import pikhurko_lower_bound
from sizeramsey.graph import Graph, complete_minus, contains_clique, max_degree, star

K4, K5, K6 = Graph.complete(4), Graph.complete(5), Graph.complete(6)
K5_MINUS_PM = complete_minus(5, [(0, 1), (2, 3)])


def test_verify_red_matching_on_k4_is_good():
    c = TwoColouring(K4, frozenset({(0, 1), (2, 3)}))
    assert verify_colouring(c, 2, 3).good
    assert sorted(c.blue) == [(0, 2), (0, 3), (1, 2), (1, 3)]


def test_verify_all_blue_k5_gives_blue_clique():
    res = verify_colouring(TwoColouring(K5, frozenset()), 2, 3)
    assert res.kind == "blue_clique"
    a, b, c = res.witness
    assert K5.has_edge(a, b) and K5.has_edge(b, c) and K5.has_edge(a, c)


def test_verify_red_cherry_gives_red_star():
    g = star(2)
    res = verify_colouring(TwoColouring(g, frozenset(g.edges())), 2, 3)
    assert res.kind == "red_star"
    assert res.witness[0] == 0


def test_verify_rejects_small_parameters():
    with pytest.raises(ValueError):
        verify_colouring(TwoColouring(K4, frozenset()), 1, 3)
    with pytest.raises(ValueError):
        arrows(K4, 2, 1)


def test_colouring_rejects_non_edges():
    with pytest.raises(ValueError):
        TwoColouring(star(2), frozenset({(1, 2)}))


def test_arrows_examples():
    assert arrows(K5, 2, 3).verdict is True
    dec = arrows(K4, 2, 3)
    assert dec.verdict is False
    assert verify_colouring(dec.certificate, 2, 3).good
    # the only good colourings of K_4 are a red perfect matching plus a blue C_4
    assert len(dec.certificate.red) == 2
    assert arrows(K5_MINUS_PM, 2, 3).verdict is True
    assert arrows(star(2), 2, 2).verdict is True


def test_brute_force_examples():
    assert brute_force_arrows(complete_minus(5, [(0, 1), (0, 2), (1, 2)]), 2, 3) is False
    assert brute_force_arrows(K5, 2, 3) is True
    assert brute_force_arrows(Graph.complete(2), 2, 3) is False
    with pytest.raises(ValueError):
        brute_force_arrows(Graph.complete(7), 2, 3)


def test_oracle_counts_k4_good_colourings():
    # independent recount: exactly the 3 perfect matchings of K_4 are good red sets for (2,3)
    edges = K4.edges()
    good = 0
    for r in range(len(edges) + 1):
        for red in itertools.combinations(edges, r):
            if verify_colouring(TwoColouring(K4, frozenset(red)), 2, 3).good:
                good += 1
    assert good == 3


def test_monotone_witness_examples():
    assert is_subgraph_monotone_witness(K4, K5, 2, 3)
    assert is_subgraph_monotone_witness(K5, K6, 2, 3)
    assert arrows(K6, 2, 3).verdict is True
    assert is_subgraph_monotone_witness(K5_MINUS_PM, K5, 2, 3)
    with pytest.raises(ValueError):
        is_subgraph_monotone_witness(K5, K4, 2, 3)


@pytest.mark.parametrize("k,n", [(2, 3), (3, 3), (2, 4)])
def test_oracle_equivalence_small(connected_upto_9, k, n):
    mismatches = [g for g in connected_upto_9 if arrows(g, k, n).verdict != brute_force_arrows(g, k, n)]
    assert mismatches == []


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=8), st.integers(2, 3), st.integers(2, 4))
def test_certificates_are_sound(g, k, n):
    dec = arrows(g, k, n)
    if g.edge_count <= 20:
        assert dec.verdict == brute_force_arrows(g, k, n)
    if dec.verdict is False:
        assert verify_colouring(dec.certificate, k, n).good
    else:
        assert dec.stats.components_searched >= 1


def test_monotonicity_under_edge_addition():
    rng = random.Random(2024)
    checked = 0
    while checked < 200:
        order = rng.randint(4, 8)
        g = random_graph(rng, order, rng.uniform(0.4, 0.9))
        missing = [(u, v) for u in range(order) for v in range(u + 1, order) if not g.has_edge(u, v)]
        if not missing:
            continue
        bigger = g.add_edge(*rng.choice(missing))
        k, n = rng.choice([(2, 3), (3, 3), (2, 4)])
        if arrows(g, k, n).verdict:
            assert arrows(bigger, k, n).verdict is True
        assert is_subgraph_monotone_witness(g, bigger, k, n)
        checked += 1


@settings(max_examples=100, deadline=None)
@given(graphs(max_order=8), st.integers(2, 3), st.integers(2, 4))
def test_isolated_vertex_invariance(g, k, n):
    assert arrows(g, k, n).verdict == arrows(g.add_vertices(1), k, n).verdict


@settings(max_examples=150, deadline=None)
@given(graphs(max_order=9), st.integers(2, 5))
def test_degenerate_clique_of_two(g, k):
    assert arrows(g, k, 2).verdict == (max_degree(g) >= k)


@settings(max_examples=150, deadline=None)
@given(graphs(min_order=3, max_order=8), st.integers(2, 3), st.integers(3, 4))
def test_arrowing_graphs_meet_edge_lower_bound(g, k, n):
    if arrows(g, k, n).verdict:
        assert g.edge_count >= pikhurko_lower_bound(k, n)


def test_budget_is_distinct_from_false():
    dec = arrows(Graph.complete(9), 2, 3, max_edges=20)
    assert dec.verdict is None and dec.status == "budget_exceeded"
    dec = arrows(Graph.complete(8), 3, 3, node_limit=1)
    assert dec.verdict is None


def test_component_rule():
    # K_4 + K_5 arrows because K_5 does; two copies of K_4 do not
    g = Graph.from_edges(13, K4.edges() + [(u + 4, v + 4) for u, v in K5.edges()])
    assert arrows(g, 2, 3).verdict is True
    h = Graph.from_edges(8, K4.edges() + [(u + 4, v + 4) for u, v in K4.edges()])
    dec = arrows(h, 2, 3)
    assert dec.verdict is False and verify_colouring(dec.certificate, 2, 3).good


def test_erdos_graph_k4_engine():
    from sizeramsey.extremal import erdos_graph

    dec = arrows(erdos_graph(4), 4, 3)
    assert dec.verdict is True


def test_certificate_json_round_trip():
    dec = arrows(K4, 2, 3)
    data = json.loads(dec.certificate.to_json())
    assert data["edges"] == sorted(data["edges"])
    assert set(data) >= {"edges", "red"}
    assert TwoColouring.from_dict(data) == dec.certificate
    again = ArrowDecision.from_dict(json.loads(json.dumps(dec.to_dict())))
    assert again == dec


def test_brute_force_good_colouring_is_good():
    c = brute_force_good_colouring(K4, 2, 3)
    assert verify_colouring(c, 2, 3).good
    assert not contains_clique(c.blue_graph(), 3)[0]
