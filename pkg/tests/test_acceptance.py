"""Acceptance gate: nine criteria, each reported as one PASS/FAIL line."""

from __future__ import annotations

import math
import time

from conftest import record_acceptance

from sizeramsey.arrowing import arrows, brute_force_arrows, verify_colouring
from sizeramsey.canon import enumerate_graphs
from sizeramsey.extremal import compute_rhat, compute_rhat_star, erdos_graph, extremal_candidate
from sizeramsey.formulas import (
    audit_inequalities,
    pikhurko_lower_bound,
    ramsey_star_clique,
    rhat_star,
    rhat_theorem3,
    large_n_threshold,
)
from sizeramsey.graph import Graph, induced
from sizeramsey.lemmas import good_colouring, mindeg_or_matching, oracle_mindeg_subset, peel_cascade, peel_T, verify_dichotomy


def test_criterion_1_rhat_two_three():
    start = time.perf_counter()
    rh = compute_rhat(2, 3)
    rs = compute_rhat_star(2, 3)
    elapsed = time.perf_counter() - start
    closed = math.comb(5, 2) - 2
    checked = sum(count for _, count in rh.exhausted["levels"])
    ok = (rh.exact and rs.exact and rh.value == rs.value == closed == 8
          and [e for e, _ in rh.exhausted["levels"]] == list(range(1, 8)) and elapsed < 60)
    record_acceptance(1, ok, f"rhat={rh.value} rhat*={rs.value} closed={closed}, "
                             f"{checked} connected classes with <=7 edges, {elapsed:.1f}s")
    assert ok


def test_criterion_2_rhat_star_three_three():
    rs = compute_rhat_star(3, 3)
    closed = math.comb(7, 2) - math.comb(3, 2)
    ok = rs.exact and rs.value == closed == 18 and rs.witness.edge_count == 18
    record_acceptance(2, ok, f"rhat*(3,3)={rs.value} exact={rs.exact} (closed form {closed})")
    assert ok


def test_criterion_3_erdos_construction():
    results = {}
    for k in (2, 3):
        g = erdos_graph(k)
        results[k] = (brute_force_arrows(g, k, 3), g.edge_count)
    start = time.perf_counter()
    g4 = erdos_graph(4)
    dec = arrows(g4, 4, 3)
    elapsed = time.perf_counter() - start
    results[4] = (dec.verdict, g4.edge_count)
    ok = all(v is True and e == math.comb(2 * k + 1, 2) - math.comb(k, 2) for k, (v, e) in results.items())
    ok = ok and elapsed < 600
    record_acceptance(3, ok, ", ".join(f"k={k}: arrows={v} e={e}" for k, (v, e) in results.items())
                      + f" (k=4 engine {elapsed:.2f}s)")
    assert ok


def test_criterion_4_oracle_equivalence(connected_upto_9):
    discrepancies = []
    for k, n in [(2, 3), (3, 3), (2, 4)]:
        for g in connected_upto_9:
            if arrows(g, k, n).verdict != brute_force_arrows(g, k, n):
                discrepancies.append((k, n, g))
    ok = not discrepancies and max(g.edge_count for g in connected_upto_9) == 9
    record_acceptance(4, ok, f"{len(connected_upto_9)} graphs x 3 parameter pairs, "
                             f"{len(discrepancies)} discrepancies")
    assert ok


def test_criterion_5_good_colouring_completeness(graphs_upto_7):
    failures = []
    checked = 0
    for g in graphs_upto_7:
        if g.order != 5 or g.edge_count > 7:
            continue
        checked += 1
        col = good_colouring(g, 2, 3)
        dec = arrows(g, 2, 3)
        if col is None or not verify_colouring(col, 2, 3).good or dec.verdict is not False:
            failures.append(g)
    k5_none = good_colouring(Graph.complete(5), 2, 3) is None
    # graphs on 5 vertices by edge count 0..7 (OEIS A008406 row 5)
    ok = not failures and k5_none and checked == sum([1, 1, 2, 4, 6, 6, 6, 4])
    record_acceptance(5, ok, f"{checked} five-vertex graphs with e<=7, {len(failures)} failures, "
                             f"good_colouring(K5) is None: {k5_none}")
    assert ok


def test_criterion_6_dichotomy(graphs_upto_8):
    violations = []
    checked = 0
    for k in (2, 3, 4):
        for g in graphs_upto_8:
            if g.edge_count < math.comb(k, 2) + 1:
                continue
            checked += 1
            res = mindeg_or_matching(g, k)
            oracle = oracle_mindeg_subset(g, k)
            if (not verify_dichotomy(g, k, res)
                    or (res.kind == "matching") != (oracle is None)
                    or (k == 3 and res.kind == "matching")):
                violations.append((k, g))
    ok = not violations and max(g.order for g in graphs_upto_8) == 8
    record_acceptance(6, ok, f"{checked} (graph, k) instances over {len(graphs_upto_8)} graphs, "
                             f"{len(violations)} violations")
    assert ok


def test_criterion_7_inequality_audit():
    start = time.perf_counter()
    reports = audit_inequalities(range(2, 6), 50)
    elapsed = time.perf_counter() - start
    points = sum(r.points for r in reports)
    bad = [r.inequality for r in reports if not r.ok]
    ok = not bad
    record_acceptance(7, ok, f"{len(reports)} inequalities, {points} points, violations in {bad or 'none'}, "
                             f"{elapsed:.1f}s")
    assert ok


def test_criterion_8_formula_consistency():
    violations = []
    for k in range(2, 6):
        for n in range(large_n_threshold(k), large_n_threshold(k) + 200):
            if rhat_theorem3(k, n) != rhat_star(k, n):
                violations.append(("large_n_formula", k, n))
    for k in range(2, 13):
        for n in range(2, 13):
            if rhat_star(k, n) > math.comb(ramsey_star_clique(k, n), 2):
                violations.append(("upper", k, n))
            if pikhurko_lower_bound(k, n) > rhat_star(k, n):
                violations.append(("lower", k, n))
    ok = not violations
    record_acceptance(8, ok, f"{len(violations)} violations")
    assert ok


def _arrowing_corpus(connected_upto_9, graphs_upto_7):
    corpus = []
    for k, n in [(2, 3), (3, 3), (2, 4)]:
        corpus += [(g, k, n) for g in connected_upto_9 if arrows(g, k, n).verdict is True]
        corpus += [(g, k, n) for g in graphs_upto_7
                   if g.edge_count > 9 and arrows(g, k, n).verdict is True]
    extra = [(Graph.complete(5), 2, 3), (Graph.complete(7), 2, 4), (Graph.complete(9), 2, 5),
             (Graph.complete(10), 3, 4), (erdos_graph(2), 2, 3), (erdos_graph(3), 3, 3), (erdos_graph(4), 4, 3),
             (extremal_candidate(2, 3), 2, 3), (extremal_candidate(3, 3), 3, 3), (extremal_candidate(2, 4), 2, 4)]
    # graphs with surplus vertices give cascades of more than one layer
    extra += [(Graph.complete(o), k, n) for o, k, n in
              [(10, 2, 5), (11, 2, 5), (12, 2, 5), (12, 2, 6), (13, 2, 6), (11, 3, 4), (12, 3, 4)]]
    extra.append((Graph.complete(12).remove_edges([(0, 1), (2, 3)]), 2, 5))
    corpus += [(g, k, n) for g, k, n in extra if arrows(g, k, n, max_edges=100).verdict is True]
    return corpus


def _peel_ok(g: Graph, t, b, k: int) -> bool:
    bset = set(b)
    inside = [sum(1 for w in g.neighbours(v) if w in bset) for v in b]
    return (not inside or max(inside) < k) and all(
        sum(1 for w in g.neighbours(v) if w in bset) >= k for v in t)


def test_criterion_9_peeling(connected_upto_9, graphs_upto_7):
    corpus = _arrowing_corpus(connected_upto_9, graphs_upto_7)
    failures = []
    layers_seen = 0
    deepest = 0
    for g, k, n in corpus:
        layer = peel_T(g, k)
        if layer is None or not _peel_ok(g, layer.T, layer.B, k):
            failures.append(("peel_T", k, n, g))
            continue
        previous = tuple(range(g.order))
        prev_ell = None
        trace = peel_cascade(g, k, n)
        deepest = max(deepest, len(trace))
        for lay in trace:
            layers_seen += 1
            host = induced(g, previous)
            t = [previous.index(v) for v in lay.T]
            b = [previous.index(v) for v in lay.B]
            if (not _peel_ok(host, t, b, k) or len(lay.B) < k
                    or (prev_ell is not None and lay.ell > prev_ell)):
                failures.append(("cascade", k, n, g))
                break
            prev_ell, previous = lay.ell, lay.T
    ok = not failures and deepest >= 3
    record_acceptance(9, ok, f"{len(corpus)} arrowing instances, {layers_seen} cascade layers "
                             f"(deepest {deepest}), {len(failures)} failures")
    assert ok
