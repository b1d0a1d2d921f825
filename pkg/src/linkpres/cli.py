"""
Command-line interface.

Exit status is 0 on success, 1 on a negative verdict such as an invalid
presentation or a diverging replay, and 2 on usage errors such as a missing
file or a bad option.
"""
from __future__ import annotations

import argparse
import sys

from . import corpus
from .core import PresentationError, canonical_code, is_isomorphic, trace_faces, validate
from .io import ParseError, format_trace, parse, parse_trace, serialize
from .passes import build_adjacent_graph, classify_replacement, find_maximal_passes, shortest_route
from .reduction import ReduceConfig, code8, reduce, replay
from .render import render_svg

FAMILIES = ("trivial", "example31", "thistlethwaite", "goeritz")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _load(path: str):
    return parse(_read(path))


def cmd_validate(args) -> int:
    text = _read(args.file)
    try:
        parse(text)
    except PresentationError as exc:
        print(f"invalid: {exc}")
        return 1
    print("valid")
    return 0


def cmd_faces(args) -> int:
    p = _load(args.file)
    for i, f in enumerate(trace_faces(p)):
        print(f"f{i}: " + " ".join(f"e{e}" for e in f.edges))
    return 0


def cmd_isomorphic(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if is_isomorphic(a, b):
        print("isomorphic")
        return 0
    print("not isomorphic")
    return 1


def cmd_passes(args) -> int:
    p = _load(args.file)
    for ps in find_maximal_passes(p):
        _, m = shortest_route(build_adjacent_graph(p, ps))
        print(f"{ps}  k={ps.k} m={m} {classify_replacement(ps.k, m)}")
    return 0


def cmd_reduce(args) -> int:
    p = _load(args.file)
    report = reduce(p, ReduceConfig(budget=args.budget, seed=args.seed, pass_order=args.pass_order))
    if args.trace:
        _write(args.trace, format_trace(report.trace))
    if args.out:
        _write(args.out, serialize(report.final))
    print(f"outcome: {report.outcome}")
    print(f"crossings: {p.n} -> {report.final.n}")
    print(f"moves: {len(report.trace)} (equal replacements: {report.stats['equal_replacements']})")
    print(f"final: {code8(report.final_code)}")
    return 0


def cmd_replay(args) -> int:
    p = _load(args.file)
    trace = parse_trace(_read(args.trace))
    try:
        q = replay(p, trace)
    except PresentationError as exc:
        print(f"diverged: {exc}")
        return 1
    print(f"crossings: {q.n}")
    print(f"final: {code8(canonical_code(q))}")
    return 0


def cmd_gen(args) -> int:
    if args.family == "trivial":
        p = corpus.make_trivial(args.components)
    elif args.family == "example31":
        p = corpus.make_example31()[args.which - 1]
    elif args.family == "thistlethwaite":
        p = corpus.make_thistlethwaite()
    else:
        p = corpus.make_goeritz(args.k, args.l)
    _write(args.out, serialize(p))
    return 0


def cmd_render(args) -> int:
    p = _load(args.file)
    _write(args.out, render_svg(p))
    return 0


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="linkpres", description="Embedding presentations of links.")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a presentation file")
    s.add_argument("file")
    s.set_defaults(run=cmd_validate)

    s = sub.add_parser("faces", help="list the faces")
    s.add_argument("file")
    s.set_defaults(run=cmd_faces)

    s = sub.add_parser("isomorphic", help="compare two presentations")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(run=cmd_isomorphic)

    s = sub.add_parser("passes", help="list maximal passes and their shortest reroutes")
    s.add_argument("file")
    s.set_defaults(run=cmd_passes)

    s = sub.add_parser("reduce", help="reduce crossings and classify")
    s.add_argument("file")
    s.add_argument("--budget", type=_non_negative, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--pass-order", choices=("longest", "start"), default="longest")
    s.add_argument("--trace", metavar="OUT")
    s.add_argument("--out", metavar="FILE", help="write the final presentation")
    s.set_defaults(run=cmd_reduce)

    s = sub.add_parser("replay", help="apply a trace")
    s.add_argument("file")
    s.add_argument("trace")
    s.set_defaults(run=cmd_replay)

    s = sub.add_parser("gen", help="write a corpus presentation")
    s.add_argument("--family", choices=FAMILIES, required=True)
    s.add_argument("--k", type=_non_negative, default=0)
    s.add_argument("--l", type=_non_negative, default=0)
    s.add_argument("--components", type=_positive, default=1)
    s.add_argument("--which", type=int, choices=(1, 2), default=1, help="L1 or L2 of example31")
    s.add_argument("--out", metavar="FILE")
    s.set_defaults(run=cmd_gen)

    s = sub.add_parser("render", help="draw as SVG")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.set_defaults(run=cmd_render)
    return parser


def cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except UsageError as exc:
        print(f"linkpres: {exc}", file=sys.stderr)
        return 2
    except ParseError as exc:
        print(f"linkpres: {exc}", file=sys.stderr)
        return 1
    except PresentationError as exc:
        print(f"linkpres: invalid: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli())
