"""Command-line interface: classify graphs, verify certificates, expose the
graph operations and the word engine.

Exit codes for classify: 0 no surface subgroup, 1 surface subgroup found,
2 unknown. 64 marks unparseable input, 65 a malformed certificate, 70 an
internal soundness violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import __version__
from .graphs import Graph, GraphError, emit_graph, emit_graph6, parse_graph, parse_graph6
from .obstructions import (
    CatalogError,
    builtin_catalog,
    load_catalog,
    obstruction_from_json,
    obstruction_to_json,
    verify_obstruction,
)
from .ops import (
    clique_separators,
    co_contract,
    complement,
    join,
    simplicial_extension,
)
from .prover import (
    HAS_SURFACE,
    NO_SURFACE,
    UNKNOWN,
    SoundnessError,
    Verdict,
    check_derivation,
    classify,
    derivation_from_json,
    derivation_to_json,
)
from .words import (
    SurfacePresentation,
    WordError,
    boundary_clique_supports,
    check_hom,
    conjugate_into_clique,
    format_word,
    is_trivial,
    kernel_search,
    normal_form,
    parse_word,
)

EXIT_NO = 0
EXIT_HAS = 1
EXIT_UNKNOWN = 2
EXIT_PARSE = 64
EXIT_CERT = 65
EXIT_SOUNDNESS = 70

_VERDICT_EXIT = {NO_SURFACE: EXIT_NO, HAS_SURFACE: EXIT_HAS, UNKNOWN: EXIT_UNKNOWN}


def _read_input(source: str) -> bytes:
    if source == "-":
        return sys.stdin.buffer.read()
    if os.path.exists(source):
        with open(source, "rb") as fh:
            return fh.read()
    # allow passing a graph6 value directly on the command line
    return source.encode("utf-8")


def _sniff_format(data: bytes) -> str:
    text = data.decode("utf-8", errors="replace")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        return "edgelist" if line.startswith("vertices:") else "graph6"
    return "graph6"


def _load_graph(source: str, fmt: str) -> Graph:
    data = _read_input(source)
    if fmt == "auto":
        fmt = _sniff_format(data)
    return parse_graph(data, fmt)


def _load_extra_catalog(path: Optional[str]):
    if path is None:
        path = os.environ.get("RAAGSCOPE_CATALOG")
    if not path:
        return ()
    return tuple(load_catalog(path))


def _certificate_json(verdict: Verdict) -> Optional[dict]:
    if verdict.obstruction is not None:
        out = {"certificate_type": "obstruction"}
        out.update(obstruction_to_json(verdict.obstruction))
        return out
    if verdict.derivation is not None:
        return {"certificate_type": "derivation",
                "root": derivation_to_json(verdict.derivation)}
    return None


def _report(g: Graph, verdict: Verdict, params: dict, timings: dict) -> dict:
    return {
        "schema": "raagscope/1",
        "version": __version__,
        "input": {
            "graph6": emit_graph6(g).decode("ascii"),
            "vertices": list(g.vertices),
            "edges": [list(e) for e in g.edge_pairs],
        },
        "parameters": params,
        "verdict": verdict.status,
        "certificate": _certificate_json(verdict),
        "unknown_report": verdict.report.to_json() if verdict.report else None,
        "timings": timings,
    }


def _print_verdict(verdict: Verdict) -> None:
    print("verdict: %s" % verdict.status)
    if verdict.obstruction is not None:
        o = verdict.obstruction
        print("obstruction: %s entry=%s" % (o.kind, o.entry))
        if o.trail:
            print("trail: %s" % " ; ".join("{%s,%s}" % p for p in o.trail))
        print("embedding: %s" % " ".join("%s->%s" % ab for ab in o.embedding))
    if verdict.derivation is not None:
        print("derivation rules: %s" % ", ".join(sorted(verdict.derivation.rules_used())))
    if verdict.report is not None:
        r = verdict.report
        print("searched %d prover nodes (budget %d%s); co-contraction depth %d"
              % (r.nodes_expanded, r.budget,
                 ", exhausted" if r.budget_exhausted else "", r.cocontract_depth))


def cmd_classify(args) -> int:
    try:
        extra = _load_extra_catalog(args.catalog)
    except (CatalogError, OSError) as exc:
        print("catalog error: %s" % exc, file=sys.stderr)
        return EXIT_CERT
    params = {
        "budget": args.budget,
        "cocontract_depth": args.cocontract_depth,
        "threads": args.threads,
        "catalog": args.catalog or os.environ.get("RAAGSCOPE_CATALOG") or None,
    }

    def run_one(g: Graph) -> tuple[int, Verdict, dict]:
        timings: dict = {}
        t0 = time.perf_counter()
        verdict = classify(g, budget=args.budget, cocontract_depth=args.cocontract_depth,
                           catalog=extra, threads=args.threads,
                           cross_check=args.cross_check, timings=timings)
        timings["total"] = time.perf_counter() - t0
        return _VERDICT_EXIT[verdict.status], verdict, _report(g, verdict, params, timings)

    try:
        if args.batch:
            data = _read_input(args.input)
            for line in data.decode("utf-8").splitlines():
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                g = parse_graph6(line.encode("ascii"))
                _, _, report = run_one(g)
                if args.json:
                    print(json.dumps(report))
                else:
                    print("%s %s" % (line, report["verdict"]))
            return EXIT_NO
        g = _load_graph(args.input, args.format)
    except GraphError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    try:
        code, verdict, report = run_one(g)
    except SoundnessError as exc:
        print("internal soundness violation: %s" % exc, file=sys.stderr)
        return EXIT_SOUNDNESS
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_verdict(verdict)
    return code


def cmd_verify(args) -> int:
    try:
        g = _load_graph(args.graph, args.format)
    except GraphError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    try:
        extra = _load_extra_catalog(args.catalog)
        with open(args.certificate, "rb") as fh:
            obj = json.load(fh)
        if isinstance(obj, dict) and "certificate" in obj and "schema" in obj:
            obj = obj["certificate"]  # accept a full classify report
        if not isinstance(obj, dict) or "certificate_type" not in obj:
            raise CatalogError("certificate object lacks certificate_type")
        if obj["certificate_type"] == "obstruction":
            ok = verify_obstruction(g, obstruction_from_json(obj), extra)
        elif obj["certificate_type"] == "derivation":
            ok = check_derivation(derivation_from_json(obj["root"]), g)
        else:
            raise CatalogError("unknown certificate_type %r" % (obj["certificate_type"],))
    except (CatalogError, GraphError, OSError, json.JSONDecodeError, KeyError) as exc:
        print("malformed certificate: %s" % exc, file=sys.stderr)
        return EXIT_CERT
    print("valid" if ok else "invalid")
    return 0 if ok else 1


def cmd_ops(args) -> int:
    try:
        if args.op == "complement":
            out = complement(_load_graph(args.graph, args.format))
        elif args.op == "join":
            out = join(_load_graph(args.graph, args.format),
                       _load_graph(args.other, args.format))
        elif args.op == "cocontract":
            members = [v for v in args.vertices.split(",") if v]
            out = co_contract(_load_graph(args.graph, args.format), members)
        elif args.op == "extend":
            out, _ = simplicial_extension(_load_graph(args.graph, args.format))
        elif args.op == "separators":
            g = _load_graph(args.graph, args.format)
            splits = clique_separators(g)
            if args.json:
                print(json.dumps([{
                    "separator": sorted(s.separator),
                    "left": list(s.left.vertices),
                    "right": list(s.right.vertices),
                } for s in splits], indent=2))
            else:
                if not splits:
                    print("no clique separators")
                for s in splits:
                    print("separator: {%s} | left: %s | right: %s"
                          % (" ".join(sorted(s.separator)),
                             " ".join(s.left.vertices), " ".join(s.right.vertices)))
            return 0
        else:  # pragma: no cover
            raise GraphError("unknown op")
    except GraphError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(emit_graph(out, args.to).decode("utf-8", errors="strict"))
    return 0


def cmd_word(args) -> int:
    try:
        g = _load_graph(args.graph, args.format)
        if args.op == "nf":
            print(format_word(normal_form(g, parse_word(args.words[0]))))
        elif args.op == "trivial":
            print("true" if is_trivial(g, parse_word(args.words[0])) else "false")
        elif args.op == "equal":
            from .words import are_equal

            u, v = parse_word(args.words[0]), parse_word(args.words[1])
            print("true" if are_equal(g, u, v) else "false")
        elif args.op == "clique-conj":
            clique = conjugate_into_clique(g, parse_word(args.words[0]))
            print("none" if clique is None else "{%s}" % " ".join(sorted(clique)))
    except (GraphError, WordError, IndexError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    return 0


def _load_hom(path: str) -> tuple[SurfacePresentation, dict]:
    with open(path, "rb") as fh:
        obj = json.load(fh)
    pres = SurfacePresentation(genus=int(obj["presentation"]["genus"]),
                               boundary=int(obj["presentation"]["boundary"]))
    images = {gen: parse_word(text) for gen, text in obj["images"].items()}
    return pres, images


def cmd_surf(args) -> int:
    try:
        g = _load_graph(args.graph, args.format)
        pres, images = _load_hom(args.homfile)
        if args.op == "check":
            print("true" if check_hom(g, pres, images) else "false")
        elif args.op == "relative":
            if not check_hom(g, pres, images):
                print("not a homomorphism")
                return 1
            supports = boundary_clique_supports(g, pres, images)
            bad = [i + 1 for i, c in enumerate(supports) if c is None]
            if bad:
                print("false (boundary %s not conjugate into a clique)"
                      % ", ".join(str(i) for i in bad))
            else:
                print("true")
        elif args.op == "kernel":
            w = kernel_search(g, pres, images, args.max_len)
            print("none up to %d" % args.max_len if w is None else format_word(w))
    except (GraphError, WordError, OSError, json.JSONDecodeError, KeyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PARSE
    return 0


def cmd_catalog(args) -> int:
    entries = builtin_catalog()
    try:
        entries = list(entries) + list(_load_extra_catalog(args.catalog))
    except (CatalogError, OSError) as exc:
        print("catalog error: %s" % exc, file=sys.stderr)
        return EXIT_CERT
    for e in entries:
        print("%-8s %2d vertices  %s" % (e.name, e.graph.n, e.provenance))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="raagscope", description=__doc__)
    ap.add_argument("--version", action="version", version="raagscope %s" % __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", default="auto", choices=["auto", "graph6", "edgelist"],
                       help="input graph format (default: sniff)")

    p = sub.add_parser("classify", help="classify a graph and emit a certificate")
    p.add_argument("input", nargs="?", default="-", help="graph file, '-' for stdin, or a graph6 value")
    add_format(p)
    p.add_argument("--budget", type=int, default=10000)
    p.add_argument("--cocontract-depth", type=int, default=2)
    p.add_argument("--catalog", default=None, help="extra forbidden-graph catalog (JSON)")
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--batch", action="store_true",
                   help="treat stdin/file as one graph6 value per line")
    p.add_argument("--cross-check", action="store_true",
                   help="run the deep obstruction search even when a derivation exists")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("graph")
    p.add_argument("certificate", help="certificate JSON (or a full classify report)")
    add_format(p)
    p.add_argument("--catalog", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("ops", help="graph operations")
    opsub = p.add_subparsers(dest="op", required=True)
    for name in ("complement", "join", "cocontract", "extend", "separators"):
        q = opsub.add_parser(name)
        q.add_argument("graph")
        if name == "join":
            q.add_argument("other")
        if name == "cocontract":
            q.add_argument("vertices", help="comma-separated vertex set to co-contract")
        add_format(q)
        q.add_argument("--to", default="edgelist", choices=["edgelist", "graph6", "dot"])
        if name == "separators":
            q.add_argument("--json", action="store_true")
        q.set_defaults(func=cmd_ops)

    p = sub.add_parser("word", help="word problem in the graph group")
    wsub = p.add_subparsers(dest="op", required=True)
    for name, nwords in (("nf", 1), ("trivial", 1), ("equal", 2), ("clique-conj", 1)):
        q = wsub.add_parser(name)
        q.add_argument("-g", "--graph", required=True)
        add_format(q)
        q.add_argument("words", nargs=nwords)
        q.set_defaults(func=cmd_word)

    p = sub.add_parser("surf", help="surface-group homomorphism checks")
    ssub = p.add_subparsers(dest="op", required=True)
    for name in ("check", "relative", "kernel"):
        q = ssub.add_parser(name)
        q.add_argument("-g", "--graph", required=True)
        add_format(q)
        q.add_argument("homfile", help="JSON homomorphism file")
        if name == "kernel":
            q.add_argument("--max-len", type=int, default=8)
        q.set_defaults(func=cmd_surf)

    p = sub.add_parser("catalog", help="list the forbidden-graph catalog")
    p.add_argument("--catalog", default=None)
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SoundnessError as exc:
        print("internal soundness violation: %s" % exc, file=sys.stderr)
        return EXIT_SOUNDNESS


if __name__ == "__main__":
    sys.exit(main())
