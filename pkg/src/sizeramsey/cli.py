"""Command-line entry point.

Exit status: 0 success / positive verdict, 1 negative verdict for a check,
2 usage or precondition error, 3 search budget exceeded.

Examples::

    sizeramsey arrows --k 2 --n 3 --graph K5
    sizeramsey witness --k 2 --n 3 --graph K4 --json
    sizeramsey formulas --k 2 --n 3
    sizeramsey audit --k-min 2 --k-max 5 --window 50
    sizeramsey rhat --k 2 --n 3
    sizeramsey rhat-star --k 3 --n 3
    sizeramsey construct --kind erdos --k 3
    sizeramsey lemma --which packing --graph h.txt --k 2 --n 11 --t 1
    sizeramsey peel --graph K7 --k 2 --n 4
    sizeramsey report --k-max 3 --n-max 3
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from . import arrowing, extremal, formulas, lemmas
from .canon import EnumerationLimitError
from .graph import Graph, named_graph, parse_graph, to_edge_list, to_graph6

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


def load_graph(spec: str, fmt: str = "auto") -> Graph:
    """A file path, a name such as ``K5``/``P4``/``C5``/``S3``/``E3``, or a literal graph6 string."""
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_graph(fh.read(), fmt)
    if re.fullmatch(r"[KPCSEkpcse]\d+", spec):
        return named_graph(spec)
    return parse_graph(spec, "graph6" if fmt == "auto" else fmt)


def _emit(args, payload, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        print(text)


def render_colouring(c: arrowing.TwoColouring) -> str:
    lines = [f"good colouring of graph6 {to_graph6(c.host)}"]
    lines.append("red:  " + " ".join(f"{u}-{v}" for u, v in sorted(c.red)))
    lines.append("blue: " + " ".join(f"{u}-{v}" for u, v in sorted(c.blue)))
    return "\n".join(lines)


def render_report(result) -> str:
    """Human-readable rendering of any module result."""
    if isinstance(result, extremal.ExactResult):
        return result.row()
    if isinstance(result, formulas.AuditReport):
        return result.summary()
    if isinstance(result, arrowing.ArrowDecision):
        return {"arrows": "ARROWS", "not_arrows": "DOES NOT ARROW",
                "budget_exceeded": "UNKNOWN (budget exceeded)"}[result.status]
    if isinstance(result, arrowing.TwoColouring):
        return render_colouring(result)
    if isinstance(result, lemmas.Packing):
        return "\n".join(f"A{i + 1}: {list(p)}" for i, p in enumerate(result.parts))
    if isinstance(result, lemmas.PeelLayer):
        return f"step={result.step} |T|={len(result.T)} |B|={len(result.B)} ell={result.ell} m={result.m} T={list(result.T)}"
    if isinstance(result, lemmas.DichotomyResult):
        if result.kind == "matching":
            return f"matching with {result.matching_size} edges"
        return f"mindeg subset {list(result.subset)}"
    return str(result)


def to_json(result) -> str:
    return json.dumps(result.to_dict())


# ---------------------------------------------------------------------------
# verbs


def cmd_arrows(args) -> int:
    g = load_graph(args.graph, args.format)
    dec = arrowing.arrows(g, args.k, args.n, max_edges=args.budget_edges, node_limit=args.node_limit)
    _emit(args, dec.to_dict(), render_report(dec))
    return {True: EXIT_OK, False: EXIT_NEGATIVE, None: EXIT_BUDGET}[dec.verdict]


def cmd_witness(args) -> int:
    g = load_graph(args.graph, args.format)
    dec = arrowing.arrows(g, args.k, args.n, max_edges=args.budget_edges, node_limit=args.node_limit)
    if dec.verdict is None:
        _emit(args, dec.to_dict(), render_report(dec))
        return EXIT_BUDGET
    if dec.verdict:
        _emit(args, dec.to_dict(), "ARROWS: no good colouring exists")
        return EXIT_OK
    _emit(args, dec.certificate.to_dict(), render_colouring(dec.certificate))
    return EXIT_NEGATIVE


def cmd_construct(args) -> int:
    if args.kind == "erdos":
        g = extremal.erdos_graph(args.k)
    else:
        if args.n is None:
            raise ValueError("--n is required for the candidate construction")
        g = extremal.extremal_candidate(args.k, args.n)
    text = to_graph6(g) if args.output_format == "graph6" else to_edge_list(g).rstrip()
    _emit(args, {"graph6": to_graph6(g), "order": g.order, "edges": [list(e) for e in g.edges()]}, text)
    return EXIT_OK


def cmd_formulas(args) -> int:
    k, n = args.k, args.n
    row = {
        "k": k,
        "n": n,
        "r": formulas.ramsey_star_clique(k, n),
        "rhat_star": formulas.rhat_star(k, n),
        "large_n_formula": formulas.rhat_theorem3(k, n) if n >= formulas.large_n_threshold(k) else None,
        "large_n_threshold": formulas.large_n_threshold(k),
        "f": formulas.f_threshold(k, n),
        "r_prime": formulas.r_prime(k, n),
        "pikhurko_lb": formulas.pikhurko_lower_bound(k, n),
        "erdos_etal_lb": formulas.erdos_etal_lower_bound(k, n, args.eps) if n >= 3 else None,
        "counterexample": formulas.compare_counterexample_bound(k),
    }
    text = "\n".join([
        f"{'k':>3} {'n':>3} {'r':>5} {'rhat*':>8} {'large_n':>8} {'f':>4} {'R_prime':>7} {'pikhurko_lb':>11}",
        f"{k:>3} {n:>3} {row['r']:>5} {row['rhat_star']:>8} {str(row['large_n_formula'] or '-'):>8} "
        f"{row['f']:>4} {row['r_prime']:>7} {row['pikhurko_lb']:>11}",
        f"counterexample bound {row['counterexample']['counterexample_bound']:.4f} vs construction "
        f"{row['counterexample']['construction_edges']} "
        f"(strictly below: {row['counterexample']['strictly_below']})",
    ])
    _emit(args, row, text)
    return EXIT_OK


def cmd_audit(args) -> int:
    reports = formulas.audit_inequalities(range(args.k_min, args.k_max + 1), args.window)
    text = "\n".join(r.row() for r in reports)
    _emit(args, [r.to_dict() for r in reports], text)
    return EXIT_OK if all(r.ok for r in reports) else EXIT_NEGATIVE


def _exact(args, fn, **kw) -> int:
    try:
        res = fn(args.k, args.n, engine_budget=args.budget_edges, threads=args.threads, **kw)
    except extremal.SearchInfeasible as exc:
        _emit(args, {"k": args.k, "n": args.n, "status": "infeasible", "reason": str(exc)},
              f"k={args.k} n={args.n} not computed: {exc}")
        return EXIT_BUDGET
    _emit(args, res.to_dict(), render_report(res))
    return EXIT_OK if res.exact else EXIT_BUDGET


def cmd_rhat(args) -> int:
    return _exact(args, extremal.compute_rhat, edge_ceiling=args.max_edges)


def cmd_rhat_star(args) -> int:
    return _exact(args, extremal.compute_rhat_star, order_ceiling=args.max_order)


def cmd_lemma(args) -> int:
    g = load_graph(args.graph, args.format)
    if args.which == "dichotomy":
        res = lemmas.mindeg_or_matching(g, args.k)
        _emit(args, res.to_dict(), render_report(res))
        return EXIT_OK
    if args.which == "redundant":
        red = lemmas.redundant_vertices(g, args.n)
        _emit(args, {"redundant": list(red)}, f"redundant vertices: {list(red)}")
        return EXIT_OK if not red else EXIT_NEGATIVE
    if args.which == "packing":
        res = lemmas.disjoint_packing(g, args.k, args.n, args.t)
        _emit(args, res.to_dict(), render_report(res))
        return EXIT_OK
    col = lemmas.good_colouring(g, args.k, args.n)
    if col is None:
        _emit(args, {"colouring": None}, "no colouring: the complement is below the packing threshold")
        return EXIT_NEGATIVE
    _emit(args, col.to_dict(), render_colouring(col))
    return EXIT_OK


def cmd_peel(args) -> int:
    g = load_graph(args.graph, args.format)
    if args.n is None:
        layer = lemmas.peel_T(g, args.k)
        if layer is None:
            _emit(args, {"layer": None}, "no set T satisfies both conditions")
            return EXIT_NEGATIVE
        _emit(args, layer.to_dict(), render_report(layer))
        return EXIT_OK
    layers = lemmas.peel_cascade(g, args.k, args.n)
    _emit(args, [layer.to_dict() for layer in layers],
          "\n".join(render_report(layer) for layer in layers) or "empty cascade")
    return EXIT_OK


def cmd_report(args) -> int:
    rows = extremal.conjecture_gap_report(args.k_max, args.n_max, engine_budget=args.budget_edges,
                                          order_ceiling=args.max_order, edge_ceiling=args.max_edges,
                                          threads=args.threads)
    lines = [f"{'k':>3} {'n':>3} {'rhat':>14} {'rhat*':>14} {'closed':>7} {'exact':>6} {'equal':>6}"]
    for r in rows:
        lines.append(f"{r['k']:>3} {r['n']:>3} {str(r['rhat']):>14} {str(r['rhat_star']):>14} "
                     f"{r['closed_form']:>7} {str(r['exact']).lower():>6} {str(r['conjecture_equal']):>6}")
    lines.append("")
    lines.append(extremal.LARGE_N_LIMITATION)
    _emit(args, {"rows": rows, "limitation": extremal.LARGE_N_LIMITATION}, "\n".join(lines))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sizeramsey",
        description="Size Ramsey numbers of stars versus cliques: arrowing, constructions, audits.",
        epilog=__doc__.split("Examples::", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    common.add_argument("--threads", type=int, default=1, help="worker processes for exhaustive searches")
    common.add_argument("--budget-edges", type=int, default=arrowing.DEFAULT_EDGE_BUDGET,
                        help="largest edge count the arrowing engine will attempt")
    common.add_argument("--max-edges", type=int, default=12, help="enumeration ceiling for connected graphs")
    common.add_argument("--max-order", type=int, default=extremal.DEFAULT_ORDER_CEILING,
                        help="vertex ceiling for restricted searches")
    common.add_argument("--format", choices=["auto", "graph6", "edgelist"], default="auto",
                        help="input graph format (auto: by first byte)")

    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text, *, graph=False, k=True, n=True, n_required=True):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        if k:
            p.add_argument("--k", type=int, required=True, help="star size K_{1,k}")
        if n:
            p.add_argument("--n", type=int, required=n_required, default=None, help="clique size K_n")
        if graph:
            p.add_argument("--graph", required=True, help="file (graph6 or edge list), name like K5, or graph6 text")
        p.set_defaults(func=fn)
        return p

    p = verb("arrows", cmd_arrows, "decide F -> (K_{1,k}, K_n); exit 0 arrows, 1 not", graph=True)
    p.add_argument("--node-limit", type=int, default=None)
    p = verb("witness", cmd_witness, "print a good colouring certificate when F does not arrow", graph=True)
    p.add_argument("--node-limit", type=int, default=None)
    p = verb("construct", cmd_construct, "print the Erdos graph or the extremal candidate", n_required=False)
    p.add_argument("--kind", choices=["erdos", "candidate"], default="candidate")
    p.add_argument("--output-format", choices=["graph6", "edgelist"], default="graph6")
    p = verb("formulas", cmd_formulas, "evaluate every closed form at (k, n)")
    p.add_argument("--eps", type=float, default=0.5)
    p = verb("audit", cmd_audit, "exact audit of the proof inequalities", k=False, n=False)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=5)
    p.add_argument("--window", type=int, default=50)
    verb("rhat", cmd_rhat, "exact size Ramsey number by exhaustive search")
    verb("rhat-star", cmd_rhat_star, "exact restricted size Ramsey number by exhaustive search")
    p = verb("lemma", cmd_lemma, "run a constructive lemma on a graph", graph=True, n_required=False)
    p.add_argument("--which", choices=["dichotomy", "packing", "colouring", "redundant"], required=True)
    p.add_argument("--t", type=int, default=0, help="packing surplus t")
    p.add_argument("--ell", type=int, default=None, help="unused: the surplus is read off the graph order")
    verb("peel", cmd_peel, "peel a T-set (or the full cascade when --n is given)", graph=True, n_required=False)
    p = verb("report", cmd_report, "conjecture gap table for small (k, n)", k=False, n=False)
    p.add_argument("--k-max", type=int, default=3)
    p.add_argument("--n-max", type=int, default=3)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, EnumerationLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
