"""``ihara`` command line: JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 precondition or validation failure, 2 numeric
failure, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

import numpy as np

from . import polynomials as P
from .edge_operator import build_T, check_J_symmetry
from .families import connected_multigraphs, random_multigraph
from .multigraph import (
    GraphFormatError,
    InexactDivisionError,
    Multigraph,
    canonical_form,
    deck_from_json,
    deck_to_json,
    delete_edges,
    edge_deck,
    format_graph,
    parse_graph,
    predicates,
)
from .parallel import pmap
from .reconstruction import (
    AmbiguousCompletion,
    ConsistencyError,
    HypothesisError,
    NumericFailure,
    reconstruct,
)
from .spectral import (
    AlternantSingularError,
    ConvergenceError,
    brute_girth,
    cycle_space_basis,
    eigenspace_dims,
    is_semisimple,
    pf_eigen,
    phi_map,
    psi_map,
    simple_cycles,
    zero_has_nontrivial_block,
)
from .walks import verify_decompositions, walk_counts_brute, walk_counts_direct
from .zeta import (
    bass_polynomial,
    char_poly,
    girth_and_polygons,
    graph_char_poly,
    verify_bass_identity,
    zeta_inverse_series,
)

EXIT_OK, EXIT_PRECONDITION, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3


def _ints(xs):
    return [str(int(x)) for x in xs]


def _load_graph(path: str) -> Multigraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


# ---------------------------------------------------------------------------
# zeta / deck
# ---------------------------------------------------------------------------

def cmd_zeta(args) -> dict:
    G = _load_graph(args.graph)
    char = graph_char_poly(G)
    order = args.series_order if args.series_order is not None else 2 * G.edge_count
    series = zeta_inverse_series(char, order)
    pred = predicates(G)
    girth = girth_and_polygons(char, G.edge_count)
    return {
        "vertex_count": G.vertex_count,
        "edge_count": G.edge_count,
        "char_poly": _ints(char),
        "zeta_inverse_series": _ints(series.as_ints()),
        "bass_polynomial": _ints(bass_polynomial(G)),
        "bass_identity": verify_bass_identity(G) if pred.connected else None,
        "girth": None if girth is None else {"girth": girth.girth, "count": girth.g_gon_count},
        "connected": pred.connected,
        "average_degree": str(pred.avg_degree),
    }


def cmd_deck(args) -> dict:
    G = _load_graph(args.graph)
    payload = deck_to_json(edge_deck(G))
    payload["class_count"] = len(payload["cards"])
    return payload


# ---------------------------------------------------------------------------
# reconstruct
# ---------------------------------------------------------------------------

def _direct_tables(G: Multigraph, R: int):
    tab = walk_counts_direct(G, R)
    by_card: dict[str, dict[str, list[int]]] = {}
    for e in range(G.edge_count):
        key = canonical_form(delete_edges(G, [e]))
        by_card.setdefault(key, {"N": [], "M": [], "F": []})
        row = by_card[key]
        for name, vals in (("N", tab.N_edge(e)), ("M", tab.M_edge(e)), ("F", tab.F_edge(e))):
            row[name].append(vals)
    return tab, by_card


def _compare(G: Multigraph, rep, R: int, w_max: int) -> tuple[dict, dict]:
    direct: dict = {"char_poly": _ints(graph_char_poly(G))}
    verdict: dict = {"char_poly": "match" if rep.char_poly == graph_char_poly(G) else "mismatch"}
    if rep.N_total is not None:
        totals = P.power_sums(graph_char_poly(G), len(rep.N_total))
        verdict["N_total"] = "match" if totals == rep.N_total else "mismatch"
    if rep.N is not None:
        tab, by_card = _direct_tables(G, R)
        for name, got in (("N", rep.N), ("M", rep.M), ("F", rep.F)):
            ok = all(all(vals == got[key] for vals in row[name]) for key, row in by_card.items())
            verdict[name] = "match" if ok else "mismatch"
        if rep.W is not None:
            RW = min(w_max, G.edge_count - 2)
            wt = walk_counts_direct(G, RW)
            ok = all(
                wt.W_edge[e] == rep.W[canonical_form(delete_edges(G, [e]))] for e in range(G.edge_count)
            )
            verdict["W"] = "match" if ok else "mismatch"
    if rep.pf is not None:
        pf = pf_eigen(build_T(G), G)
        direct["pf_lambda"] = repr(pf.value)
        worst = 0.0
        for e in range(G.edge_count):
            got = rep.pf[canonical_form(delete_edges(G, [e]))]
            worst = max(worst, abs(got.sigma - pf.sigma[e]), abs(got.pi - pf.pi[e]))
        direct["pf_max_error"] = repr(worst)
        verdict["pf"] = "match" if worst < 1e-6 else "mismatch"
    return direct, verdict


def cmd_reconstruct(args) -> dict:
    if (args.graph is None) == (args.deck_file is None):
        raise GraphFormatError("give exactly one of a graph file or --deck-file")
    G = None
    if args.deck_file is not None:
        with open(args.deck_file, encoding="utf-8") as fh:
            deck = deck_from_json(json.load(fh))
    else:
        G = _load_graph(args.graph)
        deck = edge_deck(G)
    R = args.r_max if args.r_max is not None else 2 * deck.source_edge_count
    # Everything below the next line sees the deck only.
    rep = reconstruct(deck, args.what, R, args.w_max)
    out = {"reconstruction": rep.to_json(), "from_deck_only": args.from_deck_only or G is None}
    if G is not None and not args.from_deck_only:
        direct, verdict = _compare(G, rep, R, args.w_max)
        out["direct"] = direct
        out["verdicts"] = verdict
        out["all_match"] = all(v == "match" for v in verdict.values())
    return out


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def run_checks(G: Multigraph, R: int = 8, fault: bool = False) -> dict:
    """The invariant battery; returns {check: {"pass": bool, ...}}."""
    checks: dict[str, dict] = {}
    pred = predicates(G)
    m = G.edge_count
    T = build_T(G)
    if fault:
        T[0, 0] = 1 - T[0, 0]
    char = char_poly(T)

    checks["J_symmetry"] = {"pass": check_J_symmetry(T)}
    if pred.connected:
        k = m - G.vertex_count
        A = P.binomial_poly(abs(k), -1)
        B = bass_polynomial(G)
        ok = P.trim(char) == P.poly_mul(A, B) if k >= 0 else P.poly_mul(char, A) == P.trim(B)
        checks["bass_identity"] = {"pass": ok}

    powers = [np.identity(2 * m, dtype=object)]
    for _ in range(max(R, 2 * m)):
        powers.append(powers[-1].dot(T))
    traces = [int(np.trace(powers[r])) for r in range(1, 2 * m + 1)]
    checks["newton_totals"] = {"pass": P.power_sums(char, 2 * m) == traces}

    if not fault:
        tab = walk_counts_direct(G, R)
        checks["decompositions"] = {"pass": verify_decompositions(tab)}
        if m <= 8:
            RB = min(R, 6)
            brute = walk_counts_brute(G, RB)
            short = walk_counts_direct(G, RB)
            same = brute.N == short.N and brute.M == short.M and brute.F == short.F and brute.W_edge == short.W_edge
            checks["brute_force_walks"] = {"pass": same, "R": RB}

    zero_block = zero_has_nontrivial_block(T)
    finding = {"pass": True, "nontrivial_zero_block": zero_block, "semisimple": is_semisimple(T, char)}
    if pred.connected and pred.has_end_vertex and m > 1:
        finding["pass"] = zero_block
    checks["jordan_zero"] = finding

    if pred.connected and pred.betti is not None and pred.betti > 1:
        dims = eigenspace_dims(T)
        expected = (pred.betti, pred.betti - pred.p)
        checks["eigenspace_dims"] = {
            "pass": (dims.dim_plus, dims.dim_minus) == expected,
            "dims": [dims.dim_plus, dims.dim_minus],
            "expected": list(expected),
        }
        ok = all(not np.any(T.dot(v) - v) for v in (phi_map(G, c) for c in cycle_space_basis(G)))
        checks["phi_fixed"] = {"pass": ok}
        even = [c for c in simple_cycles(G, min(8, G.vertex_count)) if c.even]
        ok = all(not np.any(T.dot(v) + v) for v in (psi_map(G, c) for c in even))
        checks["psi_antifixed"] = {"pass": ok, "cycles": len(even)}
        bg = brute_girth(G)
        try:
            gr = girth_and_polygons(char, m)
            got = None if gr is None else (gr.girth, gr.g_gon_count)
        except ArithmeticError:
            got = "invalid"
        checks["girth"] = {"pass": got == bg, "girth": None if bg is None else list(bg)}
        if not pred.has_end_vertex and not fault:
            pf = pf_eigen(T, G)
            checks["pf_normalisation"] = {
                "pass": abs(2 * sum(pf.pi) - 1) < 1e-9 and pf.residual < 1e-10,
                "lambda_pf": repr(pf.value),
            }
    return checks


def _checks_for(item):
    G, R = item
    checks = run_checks(G, R)
    return {"graph": format_graph(G), "all_pass": all(c["pass"] for c in checks.values()), "checks": checks}


def cmd_verify(args) -> dict:
    if args.random is not None:
        if args.graph is not None:
            raise GraphFormatError("--random does not take a graph file")
        rng = random.Random(args.seed)
        graphs = []
        for _ in range(args.random):
            n = rng.randint(1, 6)
            m = rng.randint(max(1, n - 1), 10)
            graphs.append(random_multigraph(rng, n, m, loop_prob=0.15))
        results = pmap(_checks_for, [(G, args.r_max) for G in graphs])
        return {
            "seed": args.seed,
            "count": len(results),
            "all_pass": all(r["all_pass"] for r in results),
            "results": results,
        }
    if args.graph is None:
        raise GraphFormatError("verify needs a graph file or --random N")
    G = _load_graph(args.graph)
    checks = run_checks(G, args.r_max, fault=args.fault)
    return {"all_pass": all(c["pass"] for c in checks.values()), "checks": checks, "fault": args.fault}


# ---------------------------------------------------------------------------
# probe
# ---------------------------------------------------------------------------

def _semisimple_row(G: Multigraph) -> dict:
    pred = predicates(G)
    T = build_T(G)
    return {
        "graph": format_graph(G),
        "edge_count": G.edge_count,
        "end_vertex": pred.has_end_vertex,
        "semisimple": is_semisimple(T, char_poly(T)),
    }


def _deletion_signature(G: Multigraph):
    cards = sorted(tuple(graph_char_poly(delete_edges(G, [e]))) for e in range(G.edge_count))
    return tuple(cards), tuple(graph_char_poly(G))


def cmd_probe(args) -> dict:
    graphs = connected_multigraphs(args.max_edges)
    if args.question == "semisimple":
        rows = pmap(_semisimple_row, graphs)
        return {
            "question": "semisimple",
            "max_edges": args.max_edges,
            "graphs": rows,
            "semisimple_with_end_vertex": [
                r["graph"] for r in rows if r["end_vertex"] and r["semisimple"] and r["edge_count"] >= 2
            ],
        }
    sigs = pmap(_deletion_signature, graphs)
    groups: dict = {}
    for G, (cards, char) in zip(graphs, sigs):
        groups.setdefault((G.edge_count, cards), {}).setdefault(char, []).append(G)
    collisions = []
    for by_char in groups.values():
        if len(by_char) > 1:
            members = [G for gs in by_char.values() for G in gs]
            collisions.append({
                "graphs": [format_graph(G) for G in members],
                "average_degrees": [str(predicates(G).avg_degree) for G in members],
                "char_polys": [_ints(c) for c in by_char],
            })
    return {
        "question": "single-deletion-zeta",
        "max_edges": args.max_edges,
        "graphs_examined": len(graphs),
        "collisions": collisions,
    }


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ihara", description="Ihara zeta functions and edge decks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", help="characteristic polynomial, zeta series, Bass check, girth")
    p.add_argument("graph")
    p.add_argument("--series-order", type=int, default=None)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("deck", help="edge deck of a graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("reconstruct", help="reconstruct zeta data from the edge deck")
    p.add_argument("graph", nargs="?")
    p.add_argument("--deck-file", help="read the deck (JSON, as printed by 'deck') instead of a graph")
    p.add_argument("--what", choices=["zeta", "walks", "pf", "all"], default="all")
    p.add_argument("--r-max", type=int, default=None, help="largest walk length (default 2|E|)")
    p.add_argument("--w-max", type=int, default=3, help="largest length for W_r(e) (at most |E| - 2)")
    p.add_argument("--from-deck-only", action="store_true", help="skip the direct comparison")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("verify", help="run the invariant battery")
    p.add_argument("graph", nargs="?")
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--fault", action="store_true", help="flip one entry of T first")
    p.add_argument("--random", type=int, default=None, metavar="N", help="check N random graphs instead")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", help="exhaustive searches related to open questions")
    p.add_argument("--max-edges", type=int, default=4)
    p.add_argument("--question", choices=["semisimple", "single-deletion-zeta"], default="semisimple")
    p.set_defaults(func=cmd_probe)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload = args.func(args)
    except OSError as exc:
        print(f"ihara: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericFailure, AlternantSingularError, ConvergenceError) as exc:
        print(f"ihara: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (HypothesisError, GraphFormatError, InexactDivisionError, ConsistencyError, AmbiguousCompletion, ValueError) as exc:
        print(f"ihara: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ArithmeticError as exc:
        print(f"ihara: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    sys.stdout.write(json.dumps(payload, sort_keys=True) + "\n")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
