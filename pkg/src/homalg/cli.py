"""Command-line interface.

Exit codes: 0 success (or positive verdict), 1 negative verdict from a
check-style command, 2 malformed input, 3 a resource cap refused the
computation, 4 bad parameters or violated preconditions.

Graph operands are file paths or "-" for stdin; both wire formats
(edge-list and JSON) are auto-detected.  Commands that emit graphs write
edge-list text by default and JSON under --json, so pipelines compose:

    homalg op power h.el b.el | homalg op loopsub - | homalg check --regular -
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import (
    disjoint_union,
    double_cover,
    join,
    loop_all,
    looped_subgraph,
    power,
    tensor,
)
from .analysis import (
    build_counterexample,
    build_hbst,
    check_bipartite_reducible,
    is_bipartite,
    regularity,
    survey_maximizer,
    zhao_criterion,
)
from .errors import FormatError, ParameterError, PreconditionError, ResourceCapError
from .graphs import Graph, make_family, parse_graph, serialize_graph, widom_rowlinson
from .homcount import (
    hom_bruteforce,
    hom_count,
    hom_from_complete,
    hom_from_complete_bipartite,
)
from .iso import is_isomorphic

_OPS = {
    "tensor": (2, tensor),
    "power": (2, power),
    "union": (2, disjoint_union),
    "join": (2, join),
    "loopall": (1, loop_all),
    "loopsub": (1, looped_subgraph),
    "doublecover": (1, double_cover),
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with its own code 2; route usage problems through the
    # parameter-error path instead so the exit-code contract holds
    def error(self, message):
        raise ParameterError(message)


def _load_graph(token: str) -> Graph:
    if token == "-":
        return parse_graph(sys.stdin.read())
    with open(token, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read())


def _emit(text: str, out_path):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _run_hom(args) -> int:
    chosen = sum([args.bruteforce, args.kdd is not None, args.clique is not None])
    if chosen > 1:
        raise ParameterError("choose at most one of --bruteforce, --kdd, --clique")
    if args.kdd is not None or args.clique is not None:
        if len(args.graphs) != 1:
            raise ParameterError("closed-form modes take exactly one target graph")
        h = _load_graph(args.graphs[0])
        if args.kdd is not None:
            a, b = args.kdd
            print(hom_from_complete_bipartite(a, b, h))
        else:
            print(hom_from_complete(args.clique, h))
        return 0
    if len(args.graphs) != 2:
        raise ParameterError("hom takes exactly two graphs: source then target")
    g = _load_graph(args.graphs[0])
    h = _load_graph(args.graphs[1])
    print(hom_bruteforce(g, h) if args.bruteforce else hom_count(g, h))
    return 0


def _run_op(args) -> int:
    if args.operation == "family":
        if not args.operands:
            raise ParameterError("family needs a name, e.g. op family cycle 5")
        try:
            params = [int(p) for p in args.operands[1:]]
        except ValueError:
            raise ParameterError("family parameters must be integers") from None
        result = make_family(args.operands[0], *params)
    else:
        arity, fn = _OPS[args.operation]
        if len(args.operands) != arity:
            raise ParameterError(f"{args.operation} takes exactly {arity} operand(s)")
        result = fn(*(_load_graph(t) for t in args.operands))
    _emit(serialize_graph(result, "json" if args.json else "edge-list"), args.out)
    return 0


def _run_check(args) -> int:
    picked = sum([args.bipartite, args.regular, args.hbst, args.zhao, args.bipred])
    if picked != 1:
        raise ParameterError(
            "choose exactly one of --bipartite, --regular, --hbst, --zhao, --bipred"
        )
    if args.limit is not None and not args.bipred:
        raise ParameterError("--limit only applies to --bipred")
    g = _load_graph(args.graph)
    if args.bipartite:
        sides = is_bipartite(g)
        if args.json:
            print(json.dumps({
                "bipartite": sides is not None,
                "sides": None if sides is None else [s.tolist() for s in sides],
            }))
        else:
            print("bipartite" if sides is not None else "not bipartite")
        return 0 if sides is not None else 1
    if args.regular:
        d = regularity(g)
        if args.json:
            print(json.dumps({"regular": d is not None, "degree": d}))
        else:
            print(f"{d}-regular" if d is not None else "not regular")
        return 0 if d is not None else 1
    if args.hbst:
        _emit(serialize_graph(build_hbst(g), "json" if args.json else "edge-list"), None)
        return 0
    if args.zhao:
        ok = zhao_criterion(g)
        if args.json:
            print(json.dumps({"holds": ok}))
        else:
            print("holds: H^bst bipartite" if ok else "fails: H^bst non-bipartite")
        return 0 if ok else 1
    limit = 6 if args.limit is None else args.limit
    verdict = check_bipartite_reducible(g, limit)
    clean = verdict.status == "no-counterexample"
    if args.json:
        print(json.dumps(verdict.to_dict()))
    elif clean:
        print(f"no counterexample up to order {limit}")
    else:
        print(f"counterexample at order {verdict.witness.order}")
        sys.stdout.write(serialize_graph(verdict.witness))
    return 0 if clean else 1


def _run_counterexample(args) -> int:
    h = _load_graph(args.h) if args.h else None
    g = _load_graph(args.g) if args.g else None
    cert = build_counterexample(args.d, h, g)
    summary = (
        f"d={cert.d}: source order {cert.g.order}, base target order {cert.h.order}\n"
        f"k = {cert.k} copies, scaled target order {cert.kh.order}\n"
        f"kdd: {cert.verdict_kdd.relation}\n"
        f"kd1: {cert.verdict_kd1.relation}\n"
    )
    text = cert.to_json() + "\n"
    if args.out:
        _emit(text, args.out)
        sys.stdout.write(summary)
    else:
        # JSON on stdout stays pipeable; the human summary goes to stderr
        sys.stderr.write(summary)
        sys.stdout.write(text)
    return 0


def _run_survey(args) -> int:
    picked = sum([args.target is not None, args.wr, args.wr_target is not None])
    if picked != 1:
        raise ParameterError("choose exactly one target: a graph file, --wr, or --wr-target")
    if args.wr:
        h = widom_rowlinson()
    elif args.wr_target is not None:
        base = _load_graph(args.wr_target[0])
        expo = _load_graph(args.wr_target[1])
        if is_bipartite(expo) is None:
            raise PreconditionError("exponent graph must be bipartite")
        h = looped_subgraph(power(base, expo))
    else:
        h = _load_graph(args.target)
    sys.stdout.write(survey_maximizer(args.n, args.d, h).to_csv())
    return 0


def _run_iso(args) -> int:
    same = is_isomorphic(_load_graph(args.a), _load_graph(args.b))
    print("isomorphic" if same else "not isomorphic")
    return 0 if same else 1


def _build_parser() -> _Parser:
    top = _Parser(prog="homalg", description="exact graph-homomorphism algebra toolkit")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hom", parents=[], help="count homomorphisms source -> target")
    p.add_argument("graphs", nargs="+", metavar="GRAPH")
    p.add_argument("--bruteforce", action="store_true",
                   help="enumerate all vertex maps instead of backtracking")
    p.add_argument("--kdd", nargs=2, type=int, metavar=("A", "B"),
                   help="count maps from the complete bipartite graph K_{A,B}")
    p.add_argument("--clique", type=int, metavar="Q",
                   help="count maps from the complete graph K_Q")
    p.set_defaults(run=_run_hom)

    p = sub.add_parser("op", help="apply a graph operation and emit the result")
    p.add_argument("operation", choices=sorted(_OPS) + ["family"])
    p.add_argument("operands", nargs="*", metavar="OPERAND")
    p.add_argument("-o", "--out", metavar="FILE")
    p.add_argument("--json", action="store_true", help="emit the JSON wire format")
    p.set_defaults(run=_run_op)

    p = sub.add_parser("check", help="structural predicates and criteria")
    p.add_argument("graph", metavar="GRAPH")
    p.add_argument("--bipartite", action="store_true")
    p.add_argument("--regular", action="store_true")
    p.add_argument("--hbst", action="store_true", help="emit the pair graph")
    p.add_argument("--zhao", action="store_true",
                   help="test whether the pair graph is bipartite")
    p.add_argument("--bipred", action="store_true",
                   help="search small sources for a square/double-cover violation")
    p.add_argument("--limit", type=int, metavar="N",
                   help="source order limit for --bipred (default 6)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=_run_check)

    p = sub.add_parser("counterexample",
                       help="scale a target until the 2d-exponent comparison flips")
    p.add_argument("d", type=int)
    p.add_argument("--h", metavar="FILE", help="target graph (default: complete on d)")
    p.add_argument("--g", metavar="FILE",
                   help="source graph (default: join of two (d-2)-cycles)")
    p.add_argument("-o", "--out", metavar="FILE", help="write the certificate here")
    p.set_defaults(run=_run_counterexample)

    p = sub.add_parser("survey",
                       help="hom counts over all d-regular classes on n vertices")
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("target", nargs="?", metavar="GRAPH")
    p.add_argument("--wr", action="store_true",
                   help="target the fully looped 3-path")
    p.add_argument("--wr-target", nargs=2, metavar=("H", "B"),
                   help="target loopsub(power(H, B)) for bipartite B")
    p.set_defaults(run=_run_survey)

    p = sub.add_parser("iso", help="isomorphism test")
    p.add_argument("a", metavar="GRAPH_A")
    p.add_argument("b", metavar="GRAPH_B")
    p.set_defaults(run=_run_iso)

    return top


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.run(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ParameterError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
