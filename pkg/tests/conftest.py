from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from sizeramsey.canon import enumerate_graphs
from sizeramsey.graph import Graph


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.order))
    h.add_edges_from(g.edges())
    return h


def random_graph(rng: random.Random, order: int, p: float) -> Graph:
    edges = [(u, v) for u in range(order) for v in range(u + 1, order) if rng.random() < p]
    return Graph.from_edges(order, edges)


@st.composite
def graphs(draw, min_order: int = 1, max_order: int = 8):
    order = draw(st.integers(min_order, max_order))
    pairs = [(u, v) for u in range(order) for v in range(u + 1, order)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(order, [e for e, b in zip(pairs, keep) if b])


@pytest.fixture(scope="session")
def graphs_upto_7():
    return [g for o in range(1, 8) for g in enumerate_graphs(99, False, False, order=o)]


@pytest.fixture(scope="session")
def graphs_upto_8(graphs_upto_7):
    return graphs_upto_7 + list(enumerate_graphs(99, False, False, order=8))


@pytest.fixture(scope="session")
def connected_upto_9():
    return list(enumerate_graphs(9))


# --- acceptance reporting ----------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record_acceptance(number: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[number] = (ok, detail)
    print(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"ACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
