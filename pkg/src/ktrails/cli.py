"""Command-line front end.

Exit codes: 0 yes/success, 1 no/infeasible, 2 usage error, 3 size-guard
refusal. Every witness leaving the process is re-verified first.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .auxgraph import aux_dump, aux_to_dot, build_aux
from .containment import extend_to_full_trail, oracle_contains_k_trail
from .errors import SizeGuardError, UsageError
from .instances import gen_gap_instance, gen_hardness_gadget, gen_random_multigraph
from .multigraph import (
    MultiGraph,
    WeightedMultiGraph,
    parse_graph,
    render_graph,
    to_dot,
)
from .oracles import oracle_feasible_split, oracle_min_k
from .preimage import (
    verify_witness,
    witness_from_json,
    witness_to_json,
    witness_violations,
)
from .recognition import is_k_trail, min_trail_k
from .weighted import (
    ApproxResult,
    NoKTrailCertificate,
    approx_min_weight_trail,
    oracle_min_weight_k_trail,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _load(path: str) -> MultiGraph | WeightedMultiGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _bare(g: MultiGraph | WeightedMultiGraph) -> MultiGraph:
    return g.graph if isinstance(g, WeightedMultiGraph) else g


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _checked_witness_json(g: MultiGraph, wit, k: int) -> str:
    problems = witness_violations(g, wit, k)
    if problems:
        raise AssertionError(f"refusing to emit unverified witness: {problems[0]}")
    return witness_to_json(wit)


def _cmd_recognize(args) -> int:
    g = _bare(_load(args.file))
    result = is_k_trail(g, args.k)
    if args.json:
        doc = {
            "k": args.k,
            "is_k_trail": result.is_trail,
            "multiplicities": list(result.witness.multiplicities(g.n))
            if result.witness
            else None,
        }
        print(json.dumps(doc, indent=2))
    else:
        print(f"{'yes' if result.is_trail else 'no'}: k={args.k}")
    if result.is_trail and args.output:
        _emit(_checked_witness_json(g, result.witness, args.k), args.output)
    return EXIT_YES if result.is_trail else EXIT_NO


def _cmd_min_k(args) -> int:
    g = _bare(_load(args.file))
    k = min_trail_k(g)
    print(json.dumps({"min_k": k}) if args.json else f"min k: {k}")
    return EXIT_YES


def _cmd_witness(args) -> int:
    g = _bare(_load(args.file))
    result = is_k_trail(g, args.k)
    if not result.is_trail:
        print(f"no: not a {args.k}-trail", file=sys.stderr)
        return EXIT_NO
    _emit(_checked_witness_json(g, result.witness, args.k), args.output)
    return EXIT_YES


def _cmd_extend(args) -> int:
    g = _bare(_load(args.file))
    with open(args.subgraph, "r", encoding="utf-8") as fh:
        u_ids = json.load(fh)
    if not isinstance(u_ids, list) or not all(isinstance(e, int) for e in u_ids):
        raise UsageError("subgraph file must hold a JSON list of edge ids")
    with open(args.witness, "r", encoding="utf-8") as fh:
        wit = witness_from_json(fh.read())
    extended = extend_to_full_trail(g, u_ids, wit, args.k)
    _emit(_checked_witness_json(g, extended, args.k + 1), args.output)
    return EXIT_YES


def _cmd_approx(args) -> int:
    gw = _load(args.file)
    if not isinstance(gw, WeightedMultiGraph):
        gw = WeightedMultiGraph(gw, tuple(0 for _ in range(gw.m)))
    outcome = approx_min_weight_trail(gw, args.k)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            if isinstance(outcome, ApproxResult):
                for rec in outcome.iterations:
                    fh.write(
                        json.dumps(
                            {
                                "iteration": rec.index,
                                "lp_value": str(rec.lp_value),
                                "live_edges": rec.live_edges,
                                "q_size": rec.q_size,
                                "action": rec.action,
                            }
                        )
                        + "\n"
                    )
    if isinstance(outcome, NoKTrailCertificate):
        doc = {"contains_k_trail": False, "k": args.k}
        print(json.dumps(doc, indent=2) if args.json else f"no {args.k}-trail contained")
        return EXIT_NO
    sub = gw.graph.subgraph_spanning(outcome.u_edges)
    problems = witness_violations(sub, outcome.witness, 2 * args.k - 1)
    if problems:
        raise AssertionError(f"refusing to emit unverified witness: {problems[0]}")
    doc = {
        "k": args.k,
        "bound": 2 * args.k - 1,
        "edges": list(outcome.u_edges),
        "weight": outcome.final_weight,
        "lp_value": str(outcome.lp_value),
        "iterations": len(outcome.iterations),
    }
    print(json.dumps(doc, indent=2) if args.json else
          f"weight {outcome.final_weight} over {len(outcome.u_edges)} edges "
          f"(lp bound {outcome.lp_value}, {2 * args.k - 1}-trail)")
    if args.output:
        _emit(witness_to_json(outcome.witness), args.output)
    return EXIT_YES


def _cmd_gen(args) -> int:
    if args.kind == "gadget":
        cubic = _bare(_load(args.cubic))
        out = gen_hardness_gadget(cubic, args.k)
        _emit(render_graph(out), args.output)
    elif args.kind == "gap":
        out = gen_gap_instance(args.k, args.n, args.weights)
        _emit(render_graph(out), args.output)
    else:
        out = gen_random_multigraph(
            args.n, args.m, args.loop_p, args.parallel_p, args.seed
        )
        _emit(render_graph(out), args.output)
    return EXIT_YES


def _cmd_aux(args) -> int:
    g = _bare(_load(args.file))
    aux = build_aux(g)
    if args.dot:
        _emit(aux_to_dot(aux), args.output)
    else:
        _emit(aux_dump(aux), args.output)
    return EXIT_YES


def _cmd_dot(args) -> int:
    g = _load(args.file)
    _emit(to_dot(g), args.output)
    return EXIT_YES


def _cmd_oracle(args) -> int:
    g = _load(args.file)
    bare = _bare(g)
    if args.question == "min-k":
        print(oracle_min_k(bare))
        return EXIT_YES
    if args.question == "feasible":
        mu = [int(x) for x in args.mu.split(",")]
        ok = oracle_feasible_split(bare, mu)
        print("yes" if ok else "no")
        return EXIT_YES if ok else EXIT_NO
    if args.question == "contains":
        ok, u = oracle_contains_k_trail(bare, args.k, args.max_edges)
        print(json.dumps({"contains": ok, "edges": list(u) if u else None}))
        return EXIT_YES if ok else EXIT_NO
    if not isinstance(g, WeightedMultiGraph):
        raise UsageError("min-weight oracle needs a weighted graph file")
    best = oracle_min_weight_k_trail(g, args.k, args.max_edges)
    if best is None:
        print("no contained k-trail")
        return EXIT_NO
    print(json.dumps({"weight": best[0], "edges": list(best[1])}))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktrails",
        description="k-trail recognition, witnesses, and weighted approximation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="is the graph a k-trail?")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", help="write the witness JSON here")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("min-k", help="smallest k making the graph a k-trail")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_min_k)

    p = sub.add_parser("witness", help="emit a verified k-tree witness")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("extend", help="grow a contained k-trail to a (k+1)-witness")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--subgraph", required=True, help="JSON list of edge ids")
    p.add_argument("--witness", required=True, help="witness JSON for the subgraph")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("approx", help="cheap (2k-1)-trail via iterative relaxation")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--trace", help="write per-iteration JSONL here")
    p.add_argument("-o", "--output", help="write the witness JSON here")
    p.set_defaults(func=_cmd_approx)

    p = sub.add_parser("gen", help="instance generators")
    gen_sub = p.add_subparsers(dest="kind", required=True)
    pg = gen_sub.add_parser("gadget")
    pg.add_argument("--cubic", required=True, help="graph file, simple 3-regular")
    pg.add_argument("-k", type=int, required=True)
    pg.add_argument("-o", "--output")
    pg.set_defaults(func=_cmd_gen)
    pg = gen_sub.add_parser("gap")
    pg.add_argument("-k", type=int, required=True)
    pg.add_argument("-n", type=int, required=True)
    pg.add_argument("--weights", type=int, default=-1)
    pg.add_argument("-o", "--output")
    pg.set_defaults(func=_cmd_gen)
    pg = gen_sub.add_parser("random")
    pg.add_argument("-n", type=int, required=True)
    pg.add_argument("-m", type=int, required=True)
    pg.add_argument("--loop-p", type=float, default=0.0)
    pg.add_argument("--parallel-p", type=float, default=0.0)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("-o", "--output")
    pg.set_defaults(func=_cmd_gen)

    p = sub.add_parser("aux", help="dump the derived slot graph")
    p.add_argument("file")
    p.add_argument("--dump", action="store_true", default=True)
    p.add_argument("--dot", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_aux)

    p = sub.add_parser("dot", help="DOT export of a graph file")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_dot)

    p = sub.add_parser("oracle", help="exponential-time reference answers")
    o_sub = p.add_subparsers(dest="question", required=True)
    po = o_sub.add_parser("min-k")
    po.add_argument("file")
    po.set_defaults(func=_cmd_oracle)
    po = o_sub.add_parser("feasible")
    po.add_argument("file")
    po.add_argument("--mu", required=True, help="comma-separated split vector")
    po.set_defaults(func=_cmd_oracle)
    po = o_sub.add_parser("contains")
    po.add_argument("file")
    po.add_argument("-k", type=int, required=True)
    po.add_argument("--max-edges", type=int, default=16)
    po.set_defaults(func=_cmd_oracle)
    po = o_sub.add_parser("min-weight")
    po.add_argument("file")
    po.add_argument("-k", type=int, required=True)
    po.add_argument("--max-edges", type=int, default=16)
    po.set_defaults(func=_cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SizeGuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
