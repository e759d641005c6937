"""Command-line entry point: ``lcschur {indep,schur2,y,verify,scan}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import corpus
from .chromatic import two_row_X, two_row_X_alpha, two_row_Y_fast, two_row_Y_oracle
from .errors import GraphError, LcSchurError, ParseError, TooLarge
from .graph import (
    Graph,
    complete_graph,
    cycle_graph,
    empty_graph,
    graph_to_json,
    is_connected,
    make_pineapple,
    make_spider,
    parse_graph_text,
    path_graph,
    star_graph,
)
from .poly import IntPolynomial, indep_poly, is_log_concave, is_strongly_log_concave, is_unimodal
from .schur2 import TwoRowProfile, fp_profile, is_2s_positive
from .verifier import verify_pineapple, verify_spider

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_GUARD = 0, 1, 2, 3
# spiders up to this many vertices get the case census and phi audit by default
SMALL_SPIDER = 12

_FAMILIES = {
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "star": star_graph,
    "empty": empty_graph,
}


def parse_parts(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text in ("", "()", "-"):
        return ()
    try:
        return tuple(int(x) for x in text.strip("()").split(",") if x.strip())
    except ValueError as exc:
        raise ParseError(f"expected comma-separated integers, got {text!r}") from exc


def parse_inline(tokens: Sequence[str]) -> Graph:
    """``spider 3,2,2,1``, ``pineapple 6 3,2,2,1``, ``path 5`` and friends, or a named graph."""
    if not tokens:
        raise ParseError("missing graph")
    head, rest = tokens[0].lower(), list(tokens[1:])
    try:
        if head == "spider" and len(rest) <= 1:
            return make_spider(parse_parts(rest[0]) if rest else ())
        if head == "pineapple" and len(rest) in (1, 2):
            return make_pineapple(int(rest[0]), parse_parts(rest[1]) if len(rest) == 2 else ())
        if head in _FAMILIES and len(rest) == 1:
            return _FAMILIES[head](int(rest[0]))
    except ValueError as exc:
        if isinstance(exc, LcSchurError):
            raise
        raise ParseError(f"bad graph spec {' '.join(tokens)!r}: {exc}") from exc
    named = corpus.named_graphs()
    if len(tokens) == 1 and tokens[0] in named:
        return named[tokens[0]]
    raise ParseError(f"unrecognised graph spec {' '.join(tokens)!r}")


def load_graph(tokens: Sequence[str]) -> Graph:
    if len(tokens) == 1 and os.path.isfile(tokens[0]):
        try:
            with open(tokens[0], encoding="utf-8") as fh:
                return parse_graph_text(fh.read())
        except OSError as exc:
            raise ParseError(str(exc)) from exc
    return parse_inline(tokens)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(args, doc: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_indep(args) -> int:
    g = load_graph(args.graph)
    p = indep_poly(g)
    lc, slc, uni = is_log_concave(p), is_strongly_log_concave(p), is_unimodal(p)
    doc = {
        "instance": json.loads(graph_to_json(g)),
        "independence_polynomial": [str(c) for c in p.coeffs],
        "log_concave": lc.holds,
        "strongly_log_concave": slc.holds,
        "unimodal": uni.holds,
        "witnesses": {"lc": lc.witness, "slc": slc.witness, "unimodal": uni.witness},
    }
    lines = [
        f"{p}, SLC: {_yes(slc.holds)}",
        f"log-concave: {_yes(lc.holds)}" + ("" if lc.holds else f" (fails at j={lc.witness[0]})"),
        f"strongly log-concave: {_yes(slc.holds)}" + ("" if slc.holds else f" (minor {slc.witness})"),
        f"unimodal: {_yes(uni.holds)}" + (f" (mode {uni.witness[0]})" if uni.holds and uni.witness else ""),
    ]
    _emit(args, doc, lines)
    return EXIT_OK


def cmd_schur2(args) -> int:
    g = load_graph(args.graph)
    if args.alpha is not None:
        prof = two_row_X_alpha(g, parse_parts(args.alpha))
    else:
        prof = two_row_X(g)
    verdict = is_2s_positive(prof)
    doc = {"instance": json.loads(graph_to_json(g)), "alpha": args.alpha, "profile": prof.to_json_obj(),
           "two_s_positive": verdict.positive}
    _emit(args, doc, [str(prof), f"2s-positive: {_yes(verdict.positive)}"])
    return EXIT_OK


def _equivalence(p: IntPolynomial, prof: TwoRowProfile) -> dict:
    diag_ok = all(
        prof[(k, k)] == p[k] * p[k] - p[k - 1] * p[k + 1]
        for k in range(1, p.degree + 1)
    )
    pos = is_2s_positive(prof).positive
    lc = is_log_concave(p).holds
    slc = is_strongly_log_concave(p).holds
    negative_diag = [k for k in range(p.degree + 2) if prof[(k, k)] < 0]
    return {
        "two_s_positive": pos,
        "log_concave": lc,
        "strongly_log_concave": slc,
        "diagonal_matches_minors": diag_ok,
        "consistent": pos == slc == lc and diag_ok,
        "negative_diagonal": negative_diag,
    }


def cmd_y(args) -> int:
    if args.poly is not None:
        p = IntPolynomial(parse_parts(args.poly))
        g = None
    else:
        g = load_graph(args.graph)
        p = indep_poly(g)
    dmax = args.degree_cap if args.degree_cap is not None else 2 * max(p.degree, 0) + 2
    prof = fp_profile(p, dmax) if g is None else two_row_Y_fast(g).truncate(dmax)
    eq = _equivalence(p, prof)
    doc = {"instance": json.loads(graph_to_json(g)) if g else {"poly": [str(c) for c in p.coeffs]},
           "profile": prof.to_json_obj(), "equivalence": eq}
    lines = [str(prof),
             f"2s-positive: {_yes(eq['two_s_positive'])}",
             f"log-concave: {_yes(eq['log_concave'])}",
             f"strongly log-concave: {_yes(eq['strongly_log_concave'])}",
             f"(k,k) entries equal i_k^2 - i_(k-1) i_(k+1): {_yes(eq['diagonal_matches_minors'])}",
             "LC ⇔ 2s-positive: " + ("consistent" if eq["consistent"] else "INCONSISTENT")]
    for k in eq["negative_diagonal"]:
        lines.append(f"negative entry at s({k},{k}): {prof[(k, k)]}")
    code = EXIT_OK if eq["consistent"] else EXIT_VIOLATION
    if args.oracle is not None:
        if g is None:
            raise ParseError("--oracle needs a graph, not --poly")
        d = args.oracle
        slow = two_row_Y_oracle(g, d)
        fast = two_row_Y_fast(g).homogeneous_part(d)
        match = slow == fast
        doc["oracle"] = {"degree": d, "slice": slow.to_json_obj(), "match": match}
        lines.append(f"oracle slice d={d}: {slow}  [{'match' if match else 'MISMATCH'}]")
        if not match:
            code = EXIT_VIOLATION
    _emit(args, doc, lines)
    return code


def _elimination_lines(table) -> list[str]:
    out = []
    for e in table:
        lp = e.profile
        k, l = lp.critical_slot
        out.append(
            f"  beta={lp.beta} a={lp.a} b={lp.b} case={e.case} "
            f"critical s({k},{l}): {e.critical_coefficient} expected {e.expected_critical}"
            f"{'' if e.ok else '  FAIL'}"
        )
    return out


def cmd_verify(args) -> int:
    kind = args.family
    if kind == "spider":
        if len(args.params) != 1:
            raise ParseError("usage: verify spider LAMBDA")
        lam = parse_parts(args.params[0])
        small = 1 + sum(lam) <= SMALL_SPIDER
        census = args.degree_cap
        if census is None and small:
            census = 4
        rep = verify_spider(lam, audit=args.audit_phi or small, cap=2 if args.cap is None else args.cap, census_degree=census)
        doc = rep.to_json_obj()
        lines = [f"{doc['instance']}: {doc['verdict']}",
                 f"I(t) = {rep.poly}",
                 f"strongly log-concave: {_yes(rep.certificate.holds)}",
                 f"Y 2s-positive: {_yes(rep.y_positive)}"]
        if rep.census:
            lines.append("cases: " + ", ".join(f"{k}={v}" for k, v in rep.census.counts.items()))
        if rep.audit:
            a = rep.audit
            lines.append(f"phi audit (cap {a.cap}): {a.checked} maps, case i {a.case_counts['i']}, "
                         f"case ii {a.case_counts['ii']}, violations {a.violation_count}")
            lines.extend(_elimination_lines(a.table))
    elif kind == "pineapple":
        if len(args.params) not in (1, 2):
            raise ParseError("usage: verify pineapple N LAMBDA")
        try:
            n = int(args.params[0])
        except ValueError as exc:
            raise ParseError(f"clique size must be an integer: {args.params[0]!r}") from exc
        lam = parse_parts(args.params[1]) if len(args.params) == 2 else ()
        rep = verify_pineapple(n, lam, audit=True, cap=1 if args.cap is None else args.cap)
        doc = rep.to_json_obj()
        lines = [f"{doc['instance']}: {doc['verdict']}",
                 f"I(t) = {rep.poly}",
                 f"log-concave: {_yes(rep.certificate.holds)}",
                 f"Y 2s-positive: {_yes(rep.y_positive)}"]
        if rep.audit:
            a = rep.audit
            lines.append(f"pendant audit (cap {a.cap}): {a.checked} maps, {a.unbalanced} with unbalanced C0, "
                         f"violations {a.violation_count}")
            lines.extend(_elimination_lines(a.table))
    else:
        raise ParseError(f"unknown family {kind!r}")
    for v in doc["violations"][:10]:
        lines.append(f"violation: {v}")
    _emit(args, doc, lines)
    return EXIT_OK if doc["verdict"] == "PASS" else EXIT_VIOLATION


# --- scans -----------------------------------------------------------------

def _scan_random_item(g: Graph) -> dict:
    p = indep_poly(g)
    eq = _equivalence(p, two_row_Y_fast(g))
    return {
        "graph": [g.n, [list(e) for e in g.edges]],
        "lc": eq["log_concave"],
        "slc": eq["strongly_log_concave"],
        "two_s_positive": eq["two_s_positive"],
        "consistent": eq["consistent"],
        "unimodal": is_unimodal(p).holds,
    }


def _scan_tree_item(g: Graph) -> dict:
    p = indep_poly(g)
    return {"graph": [g.n, [list(e) for e in g.edges]], "lc": is_log_concave(p).holds,
            "unimodal": is_unimodal(p).holds, "poly": [str(c) for c in p.coeffs]}


def _scan_clawfree_item(g: Graph) -> dict:
    p = indep_poly(g)
    return {"graph": [g.n, [list(e) for e in g.edges]], "lc": is_log_concave(p).holds,
            "x_two_s_positive": is_2s_positive(two_row_X(g)).positive}


def _run_items(fn, graphs: list[Graph], workers: int) -> list[dict]:
    if workers <= 1:
        return [fn(g) for g in graphs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, graphs, chunksize=16))


def cmd_scan(args) -> int:
    violations: list[dict] = []
    data: dict = {}
    if args.random is not None:
        n, count = args.random
        seed = 0 if args.seed is None else args.seed
        graphs = corpus.random_graphs(count, n, seed)
        items = _run_items(_scan_random_item, graphs, args.workers)
        instance = f"scan random n<={n} count={count} seed={seed}"
        data["model"] = f"G(n, 1/2), n uniform in [1, {n}], random.Random({seed})"
        violations = [{"graph": it["graph"], "reason": "LC / SLC / 2s-positivity disagree"}
                      for it in items if not it["consistent"]]
        data["unimodality_failures"] = [it["graph"] for it in items if not it["unimodal"]]
        data["lc_failures"] = sum(1 for it in items if not it["lc"])
        cases = {"graphs": len(items), "consistent": sum(it["consistent"] for it in items)}
    elif args.trees is not None:
        graphs = [t for m in range(1, args.trees + 1) for t in corpus.trees(m)]
        items = _run_items(_scan_tree_item, graphs, args.workers)
        instance = f"scan trees n<={args.trees}"
        violations = [{"graph": it["graph"], "reason": "not unimodal"} for it in items if not it["unimodal"]]
        data["lc_failures"] = [it["graph"] for it in items if not it["lc"]]
        cases = {"trees": len(items), "unimodal": sum(it["unimodal"] for it in items)}
    elif args.clawfree is not None:
        graphs = [g for m in range(1, args.clawfree + 1) for g in corpus.claw_free_graphs(m)]
        items = _run_items(_scan_clawfree_item, graphs, args.workers)
        instance = f"scan claw-free n<={args.clawfree}"
        connected = [is_connected(g) for g in graphs]
        violations = [{"graph": it["graph"], "reason": "not log-concave"} for it in items if not it["lc"]]
        violations += [{"graph": it["graph"], "reason": "connected but X not 2s-positive"}
                       for it, c in zip(items, connected) if c and not it["x_two_s_positive"]]
        cases = {"graphs": len(items), "connected": sum(connected)}
    else:
        raise ParseError("scan needs one of --random N COUNT, --trees N, --clawfree N")
    doc = {"instance": instance, "verdict": "PASS" if not violations else "FAIL",
           "cases": cases, "violations": violations, "data": data}
    lines = [f"{instance}: {doc['verdict']}"]
    lines += [f"{k}: {v}" for k, v in cases.items()]
    for k, v in data.items():
        lines.append(f"{k}: {v if not isinstance(v, list) else len(v)}")
    for v in violations[:10]:
        lines.append(f"violation: {v}")
    _emit(args, doc, lines)
    return EXIT_OK if not violations else EXIT_VIOLATION


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--degree-cap", type=int, default=None)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--cap", type=int, default=None, help="weight cap for the phi audits")

    parser = argparse.ArgumentParser(prog="lcschur", description="Independence polynomials and two-row Schur checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("indep", parents=[common], help="independence polynomial and certificates")
    p.add_argument("graph", nargs="+", help="graph file (JSON or edge list) or inline spec")
    p.set_defaults(func=cmd_indep)

    p = sub.add_parser("schur2", parents=[common], help="two-row profile of X_G or X_G^alpha")
    p.add_argument("graph", nargs="+")
    p.add_argument("--alpha", default=None, help="comma-separated weight map")
    p.set_defaults(func=cmd_schur2)

    p = sub.add_parser("y", parents=[common], help="two-row profile of Y_G and the equivalence table")
    p.add_argument("graph", nargs="*")
    p.add_argument("--oracle", type=int, default=None, metavar="D")
    p.add_argument("--poly", default=None, help="use these coefficients instead of a graph")
    p.set_defaults(func=cmd_y)

    p = sub.add_parser("verify", parents=[common], help="spider / pineapple verification")
    p.add_argument("family", choices=("spider", "pineapple"))
    p.add_argument("params", nargs="+")
    p.add_argument("--audit-phi", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", parents=[common], help="corpus scans")
    p.add_argument("--random", nargs=2, type=int, metavar=("N", "COUNT"))
    p.add_argument("--trees", type=int, metavar="N")
    p.add_argument("--clawfree", type=int, metavar="N")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        if args.command == "y" and args.poly is None and not args.graph:
            raise ParseError("y needs a graph or --poly")
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (ParseError, GraphError, LcSchurError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
