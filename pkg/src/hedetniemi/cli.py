"""Command-line front end.

Every command writes JSON (or a DIMACS file for ``product``). Errors are
reported as ``{"error": ..., "detail": ...}`` with exit code 2 for input
problems and 3 for resource limits. ``verify`` exits 1 when a check whose
guarantee was in force failed; unmet hypotheses alone keep exit code 0.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import families
from .chromatic import Budget, chromatic_number
from .errors import InputError, ResourceError, SearchTimeout
from .fractional import CHI_F_THRESHOLD, default_palette, format_rational, fractional_chromatic_number, parse_rational
from .graph import INFINITE, Graph, girth
from .io import read_graph, serialize_dimacs
from .products import DEFAULT_VERTEX_GUARD, strong_product_kq, tensor_product
from .verifier import DEFAULT_SAMPLES, build_clique_M, build_nu, verify_argument

SCHEMA = 1
EXIT_INPUT = 2
EXIT_RESOURCE = 3


def _load(spec: str, fmt: str | None) -> Graph:
    """A path, or ``name:C5`` style reference to a built-in graph."""
    if spec.startswith("name:"):
        return families.by_name(spec[5:])
    path = Path(spec)
    if not path.exists():
        raise InputError(f"no such file: {spec}")
    return read_graph(path, fmt)


def _budget(args) -> Budget:
    return Budget(nodes=args.node_budget, time_ms=args.budget_ms)


def _emit(args, payload) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _one_input(args) -> Graph:
    if not args.input or len(args.input) != 1:
        raise InputError("exactly one --input is required")
    return _load(args.input[0], args.format)


def invariants(G: Graph, budget: Budget) -> dict:
    out: dict = {"schema": SCHEMA, "n": G.n, "m": G.m}
    if G.has_loops:
        out.update(girth={"error": "looped graph"}, chi={"error": "looped graph has no proper coloring"},
                   chi_f={"error": "looped graph"})
        return out
    g = girth(G)
    out["girth"] = "infinite" if g == INFINITE else int(g)
    try:
        out["chi"] = chromatic_number(G, budget).value
    except SearchTimeout as exc:
        out["chi"] = {"status": "TIMEOUT", "lower": exc.lower, "upper": exc.upper}
    try:
        out["chi_f"] = format_rational(fractional_chromatic_number(G).value)
    except ResourceError as exc:
        out["chi_f"] = {"status": "RESOURCE", "detail": str(exc)}
    return out


def cmd_invariants(args) -> int:
    _emit(args, invariants(_one_input(args), _budget(args)))
    return 0


def cmd_product(args) -> int:
    if args.kind == "tensor":
        if not args.input or len(args.input) != 2:
            raise InputError("tensor product needs two --input graphs")
        G, H = (_load(s, args.format) for s in args.input)
        P = tensor_product(G, H, guard=args.guard)
        note = f"tensor product of {args.input[0]} and {args.input[1]}; (g,h) -> (g-1)*{H.n}+h"
    else:
        if args.q is None:
            raise InputError("strong-kq needs --q")
        G = _one_input(args)
        P = strong_product_kq(G, args.q, guard=args.guard)
        note = f"strong product with K_{args.q}; (g,i) -> (g-1)*{args.q}+i"
    _emit(args, serialize_dimacs(P, comment=note).decode("ascii"))
    return 0


def _palette(args) -> int:
    if args.q is None:
        raise InputError("--q is required")
    if args.q < 1:
        raise InputError("--q must be positive")
    if args.c is not None and args.c < 1:
        raise InputError("--c must be positive")
    return args.c if args.c is not None else default_palette(args.q, args.threshold)


def cmd_clique_m(args) -> int:
    G = _one_input(args)
    c = _palette(args)
    v = (args.v or 1) - 1
    M = build_clique_M(G, args.q, c, v)
    _emit(args, {
        "schema": SCHEMA, "v": v + 1, "q": args.q, "c": c,
        "mappings": {str(t): list(mu) for t, mu in zip(M.ts, M.mappings)},
        "clique": M.is_clique, "warnings": M.warnings,
        "violation": _one_based_violation(M.violation),
    })
    return 0


def _one_based_violation(violation):
    if violation is None or violation.get("pair") is None:
        return violation
    out = dict(violation)
    out["pair"] = {k: [g + 1, i] for k, (g, i) in violation["pair"].items()}
    return out


def cmd_nu(args) -> int:
    G = _one_input(args)
    c = _palette(args)
    if args.tau is None or args.sigma is None:
        raise InputError("--tau and --sigma are required")
    v = (args.v or 1) - 1
    nu = build_nu(G, args.q, c, v, args.tau, args.sigma)
    _emit(args, {
        "schema": SCHEMA, "v": v + 1, "q": args.q, "c": c, "tau": nu.tau, "sigma": nu.sigma,
        "mapping": list(nu.mapping), "adjacent_to_mu_tau": nu.adjacent_to_mu,
        "obstruction": _one_based_violation(nu.obstruction),
    })
    return 0


def cmd_verify(args) -> int:
    G = _one_input(args)
    c = _palette(args)
    report = verify_argument(
        G, args.q, c, budget=_budget(args), seed=args.seed, threshold=args.threshold,
        samples=args.samples, threads=args.threads, guard=args.guard,
    )
    _emit(args, report.to_json())
    return 1 if report.violations else 0


class _ArgError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _ArgError(message)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", action="append", help="graph file, or name:C5 / name:petersen")
    common.add_argument("--format", choices=["dimacs", "graph6"], default=None)
    common.add_argument("--q", type=int)
    common.add_argument("--c", type=int)
    common.add_argument("--v", type=int, help="1-based vertex of G")
    common.add_argument("--tau", type=int)
    common.add_argument("--sigma", type=int)
    common.add_argument("--budget-ms", type=int, default=None)
    common.add_argument("--node-budget", type=int, default=None)
    common.add_argument("--guard", type=int, default=DEFAULT_VERTEX_GUARD)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--samples", type=int, default=DEFAULT_SAMPLES)
    common.add_argument("--threshold", type=parse_rational, default=CHI_F_THRESHOLD)
    common.add_argument("--out")

    parser = _Parser(prog="hedetniemi", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("invariants", parents=[common], help="n, m, girth, chi, chi_f").set_defaults(func=cmd_invariants)
    p = sub.add_parser("product", parents=[common], help="tensor or strong-kq product as DIMACS")
    p.add_argument("kind", choices=["tensor", "strong-kq"])
    p.set_defaults(func=cmd_product)
    sub.add_parser("clique-m", parents=[common], help="build and check the clique M").set_defaults(func=cmd_clique_m)
    sub.add_parser("nu", parents=[common], help="build nu and check adjacency to mu_tau").set_defaults(func=cmd_nu)
    sub.add_parser("verify", parents=[common], help="step report (a)-(g)").set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.seed < 0 or args.seed >= 2**64:
            raise InputError("--seed must be a 64-bit unsigned integer")
        return args.func(args)
    except (_ArgError, InputError, ValueError) as exc:
        kind = "input" if not isinstance(exc, _ArgError) else "usage"
        sys.stdout.write(json.dumps({"error": kind, "detail": str(exc)}) + "\n")
        return EXIT_INPUT
    except ResourceError as exc:
        sys.stdout.write(json.dumps({"error": "resource", "detail": str(exc)}) + "\n")
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())

