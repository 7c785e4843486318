"""Command-line front end.

Subcommands: reconstruct, scan, construct, count, atlas, oracle.  All reports
are line-oriented ASCII with stable ordering, so identical inputs produce
byte-identical output.  Exit codes: 0 success, 1 verification failure,
2 usage error.  The RECON_BUDGET environment variable widens the default
search caps of scan and brute-force reconstruction.

Error reporting: package errors become one `ERROR <code> <detail>` line and
exit status 1 (2 for usage problems).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, confusability, constructions, counting
from .errors import CompographError, FormatError, InvalidSpec
from .graphs import (
    Alphabet,
    LabeledGraph,
    parse_graph,
    serialize_graph,
    serialize_labeled,
)
from .oracle import Oracle, format_composition
from .reconstruct import ALGORITHMS


def _load_labeled(path: str, k: int | None) -> LabeledGraph:
    text = Path(path).read_text()
    g, labeling, alphabet = parse_graph(text, k=k)
    if labeling is None:
        raise FormatError(f"{path} carries no labels line")
    if k is not None:
        alphabet = Alphabet.default(k)
    return LabeledGraph(g, alphabet, labeling)


def cmd_reconstruct(args, out) -> int:
    lg = _load_labeled(args.graph, args.k)
    oracle = Oracle(lg)
    algo = ALGORITHMS[args.algo]
    result = algo(oracle)
    for kind, t, answer in result.transcript:
        out.write(f"Q {kind} {t} -> {answer}\n")
    out.write("RECOVERED " + "".join(lg.alphabet.names[s] for s in result.labeling) + "\n")
    for w in result.witnesses:
        out.write("CANDIDATE " + "".join(lg.alphabet.names[s] for s in w) + "\n")
    out.write(f"RESULT {result.status} queries={result.sum_queries}/{result.multiset_queries}\n")
    return 0 if result.status == "unique" else 1


def _carrier_ids(graphs, n: int, tag: str):
    return [f"{tag}{n}-{i:02d}" for i in range(len(graphs))]


def cmd_scan(args, out) -> int:
    n = args.order
    carriers = catalog.enumerate_trees(n) if args.trees_only else catalog.enumerate_connected_graphs(n)
    tag = "t" if args.trees_only else "g"
    ids = _carrier_ids(carriers, n, tag)
    report = confusability.survey(carriers)
    for cid, entry in zip(ids, report.entries):
        out.write(f"CLASS {cid} {entry.verdict}\n")
    ab = Alphabet.default(n)

    def lab_str(lab):
        return "".join(ab.names[s] for s in lab)

    for cid, entry in zip(ids, report.entries):
        w = entry.multiset_witness
        if w is not None:
            out.write(f"WITNESS {cid} {lab_str(w.lab1)} {lab_str(w.lab2)}\n")
    if args.sum:
        for cid, entry in zip(ids, report.entries):
            w = entry.sum_witness
            if w is not None and entry.verdict != confusability.VERDICT_SUM:
                out.write(f"SUMWITNESS {cid} {lab_str(w.lab1)} {lab_str(w.lab2)}\n")
    return 0


def cmd_count(args, out) -> int:
    spec = catalog.parse_family(args.family)
    if args.enumerate:
        res = counting.chi_enumerate(catalog.generate(spec), args.k)
        out.write(f"CHI {spec} {args.k} {res.count} {res.method}\n")
    else:
        res = counting.chi_closed(spec, args.k)
        out.write(f"CHI {spec} {args.k} {res.count} {res.method}\n")
    return 0


def cmd_atlas(args, out) -> int:
    n = args.order
    carriers = catalog.enumerate_trees(n) if args.trees_only else catalog.enumerate_connected_graphs(n)
    family = "tree" if args.trees_only else "graph"
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for i, g in enumerate(carriers):
        path = outdir / f"{family}-{n}-{i:02d}.g"
        path.write_text(serialize_graph(g))
        out.write(f"WROTE {path}\n")
    return 0


def _parse_path_arg(text: str) -> tuple:
    ab = Alphabet.default(26)
    return tuple(ab.index(ch) for ch in text)


def cmd_construct(args, out) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    if args.kind == "interleave":
        p1, p2 = _parse_path_arg(args.p1), _parse_path_arg(args.p2)
        a, b = constructions.interleaved_pair(p1, p2)
    elif args.kind == "tm-pair":
        a, b = constructions.triangle_tail_pair(args.p)
    elif args.kind == "attach":
        base = _load_labeled(args.base, None)
        p1, p2 = _parse_path_arg(args.p1), _parse_path_arg(args.p2)
        a, b = constructions.attach_at_center(base, args.x, p1, p2)
    elif args.kind == "star-family":
        bits = tuple(int(c) for c in args.bits)
        a = constructions.subdivided_star_family(args.k, args.m, bits)
        zero = constructions.subdivided_star_family(args.k, args.m, (0,) * len(bits))
        b = zero
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidSpec(args.kind)
    for name, lg in (("a", a), ("b", b)):
        path = outdir / f"{args.kind}-{name}.g"
        path.write_text(serialize_labeled(lg))
        out.write(f"WROTE {path}\n")
    if args.verify:
        ok = confusability.equicomposable(a, b)
        out.write(f"VERIFIED equicomposable={'true' if ok else 'false'}\n")
        return 0 if ok else 1
    return 0


def cmd_oracle(args, out, stdin=None) -> int:
    lg = _load_labeled(args.graph, args.k)
    oracle = Oracle(lg)
    stdin = stdin if stdin is not None else sys.stdin
    for line in stdin:
        parts = line.split()
        if not parts:
            continue
        if parts[0] in ("QUIT", "quit"):
            break
        if len(parts) != 2 or parts[0] not in ("M", "S"):
            out.write("ERROR UsageError expected 'M <t>' or 'S <t>'\n")
            return 2
        t = int(parts[1])
        if parts[0] == "M":
            ans = oracle.multiset_query(t)
            out.write(f"Q multiset {t} -> {ans.fingerprint().decode('ascii')}\n")
        else:
            ans = oracle.sum_query(t)
            out.write(f"Q sum {t} -> {format_composition(ans)}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compograph",
        description="Reconstruction of vertex-labeled graphs from composition queries",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reconstruct", help="recover a hidden labeling through oracle queries")
    p.add_argument("--graph", required=True, help="labeled graph file (labels are hidden)")
    p.add_argument("--algo", default="auto", choices=sorted(ALGORITHMS))
    p.add_argument("--k", type=int, default=None, help="alphabet size override")

    p = sub.add_parser("scan", help="classify all carriers of one order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trees-only", action="store_true")
    p.add_argument("--sum", action="store_true", help="also print sum-only witnesses")

    p = sub.add_parser("count", help="count non-isomorphic labelings of a family member")
    p.add_argument("--family", required=True, help="e.g. path:4, star:5, substar:1,1,4, bistar:2,3")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="use the enumeration oracle")

    p = sub.add_parser("atlas", help="write one graph file per isomorphism class")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--trees-only", action="store_true")
    p.add_argument("--out", default="atlas-out")

    p = sub.add_parser("construct", help="emit equicomposable labeled graph pairs")
    p.add_argument("--kind", required=True,
                   choices=["interleave", "tm-pair", "attach", "star-family"])
    p.add_argument("--p1", help="labeled path, e.g. AB")
    p.add_argument("--p2", help="labeled path, e.g. ABC")
    p.add_argument("--p", type=int, help="half tail length for tm-pair")
    p.add_argument("--base", help="labeled base graph file for attach")
    p.add_argument("--x", type=int, default=0, help="attachment vertex in the base graph")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--bits", default="", help="choice bits for star-family, e.g. 01")
    p.add_argument("--out", default="construct-out")
    p.add_argument("--verify", action="store_true")

    p = sub.add_parser("oracle", help="answer M/S queries over a hidden labeling from stdin")
    p.add_argument("--graph", required=True)
    p.add_argument("--k", type=int, default=None)
    return parser


COMMANDS = {
    "reconstruct": cmd_reconstruct,
    "scan": cmd_scan,
    "count": cmd_count,
    "atlas": cmd_atlas,
    "construct": cmd_construct,
    "oracle": cmd_oracle,
}


def run(argv, out) -> int:
    """Parse argv and dispatch; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return COMMANDS[args.command](args, out)
    except (InvalidSpec, FormatError) as exc:
        out.write(f"ERROR {type(exc).__name__} {exc}\n")
        return 2
    except CompographError as exc:
        out.write(f"ERROR {type(exc).__name__} {exc}\n")
        return 1
    except OSError as exc:
        out.write(f"ERROR IoError {exc}\n")
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:], sys.stdout))


if __name__ == "__main__":
    main()
