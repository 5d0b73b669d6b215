"""Command-line front end.

Exit codes: 0 when every check passes (or a search finds solutions), 1 when
a check fails or a search finds nothing, 2 for usage and parse errors.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .certify import certify, expected_genus
from .derive import (
    DeriveError,
    RotationSystem,
    derive_index1,
    derive_index2,
    format_rotation_system,
    normalize_to_pure,
    parse_rotation_system,
)
from .laws import CASCADE, INDEX2, check_laws, traced
from .model import CurrentGraph, ModelError, ParseError, parse, serialize
from .tracer import classify_edges, face_log

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_graph(path: str) -> CurrentGraph:
    try:
        return parse(_read(path))
    except ParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    except ModelError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _mode(g: CurrentGraph, requested: str | None) -> str:
    if requested:
        return requested
    return INDEX2 if g.index == 2 else CASCADE


def _derive(g: CurrentGraph, mode: str, swap: bool = False) -> RotationSystem:
    if mode == CASCADE:
        return normalize_to_pure(derive_index1(g))
    return derive_index2(g, swap=swap)


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


# -- subcommands ------------------------------------------------------------

def cmd_verify(args) -> int:
    g = _load_graph(args.file)
    report = check_laws(g, _mode(g, args.mode))
    sys.stdout.write(str(report))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_trace(args) -> int:
    g = _load_graph(args.file)
    mode = _mode(g, args.mode)
    tg, walks = traced(g, mode)
    out = [f"faces {len(walks)}"]
    for k, w in enumerate(walks):
        log = face_log(w, tg)
        out.append(f"face [{k}] length {len(w)} log-length {len(log)}")
        out.append("  walk " + " ".join(str(d) for d in w.darts))
        out.append("  log  " + str(log))
    try:
        kinds = classify_edges(walks)
        out.append("edges " + " ".join(f"e{e}:{'B' if k.value == 'bidirectional' else 'U'}"
                                       for e, k in kinds.items()))
    except ValueError as exc:
        print(f"warning: {exc}", file=sys.stderr)
    sys.stdout.write("\n".join(out) + "\n")
    return EXIT_OK


def cmd_derive(args) -> int:
    g = _load_graph(args.file)
    mode = _mode(g, args.mode)
    try:
        if mode == CASCADE and args.raw:
            rs = derive_index1(g)
        else:
            rs = _derive(g, mode, args.swap)
    except DeriveError as exc:
        print(f"derive: {exc}", file=sys.stderr)
        return EXIT_FAIL
    _write(args.out, format_rotation_system(rs, args.names))
    return EXIT_OK


def _load_rotation_system(path: str) -> RotationSystem:
    try:
        return parse_rotation_system(_read(path))
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_certify(args) -> int:
    rs = _load_rotation_system(args.file)
    if rs.n < 3:
        raise UsageError(f"{args.file}: a rotation system on {rs.n} vertices cannot be certified")
    cert = certify(rs)
    sys.stdout.write(str(cert))
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_pipeline(args) -> int:
    g = _load_graph(args.file)
    mode = _mode(g, args.mode)
    report = check_laws(g, mode)
    if not report.passed:
        print(f"verify: {mode} laws fail", file=sys.stderr)
        for v in report.failures():
            print("verify: " + v.line(), file=sys.stderr)
        sys.stdout.write(str(report))
        return EXIT_FAIL
    try:
        rs = _derive(g, mode, args.swap)
    except DeriveError as exc:
        print(f"derive: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.derived:
        _write(args.derived, format_rotation_system(rs, args.names))
    cert = certify(rs)
    sys.stdout.write(str(cert))
    return EXIT_OK if cert.passed else EXIT_FAIL


def cmd_genus(args) -> int:
    try:
        print(expected_genus(args.n))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def cmd_search(args) -> int:
    from .search.runner import SearchConstraints, default_shape, run_search
    from .search.scaffold import ScaffoldError, build_scaffold

    if args.s < 1:
        raise UsageError("--s must be at least 1")
    try:
        shape = args.shape or default_shape(args.s, args.mode, args.rungs)
        scaffold = build_scaffold(args.s, args.rungs, shape, start=args.start)
    except ScaffoldError as exc:
        raise UsageError(str(exc)) from None
    if scaffold.mode != args.mode:
        raise UsageError(f"shape {scaffold.shape.name} is a {scaffold.mode} shape, not {args.mode}")
    limit = None if args.all else (args.limit or 1)
    constraints = SearchConstraints(
        mode=args.mode,
        budget=args.budget,
        limit=limit,
        symmetry=not args.no_symmetry,
        even_only=args.even_only,
        seed=args.seed,
        engine=args.engine,
    )
    try:
        result = run_search(scaffold, constraints)
    except ImportError as exc:
        print(f"search: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"shape {scaffold.shape.name} s {args.s} rungs {args.rungs} mode {args.mode} "
          f"edges {scaffold.edge_count}")
    print(f"status {result.status}")
    if result.reason:
        print(f"reason {result.reason}")
    print(f"solutions {len(result.solutions)}")
    print(f"nodes {result.nodes}")
    print(f"seconds {result.seconds:.2f}", file=sys.stderr)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for k, g in enumerate(result.solutions):
            path = out / f"solution_{k:03d}.cg"
            path.write_text(serialize(g), encoding="utf-8")
            print(f"wrote {path}")
    return EXIT_OK if result.solutions else EXIT_FAIL


# -- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="currentgraph", description="Current graphs and triangular embeddings of K_36s.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def graph_cmd(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file", help="current-graph file, or - for stdin")
        sp.add_argument("--mode", choices=(CASCADE, INDEX2), help="default: from the file's index line")
        sp.set_defaults(func=func)
        return sp

    graph_cmd("verify", cmd_verify, "check the laws and print one verdict per law")
    graph_cmd("trace", cmd_trace, "print face walks and logs")

    sp = graph_cmd("derive", cmd_derive, "print the derived rotation system")
    sp.add_argument("--names", choices=("element", "int"), default="element")
    sp.add_argument("--raw", action="store_true", help="cascade: keep the -1 signatures, skip normalizing")
    sp.add_argument("--swap", action="store_true", help="index2: exchange the face labels")
    sp.add_argument("--out", help="output path (default stdout)")

    sp = sub.add_parser("certify", help="certify a rotation system as a genus embedding of K_n")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_certify)

    sp = graph_cmd("pipeline", cmd_pipeline, "verify, derive and certify")
    sp.add_argument("--derived", help="also write the derived rotation system here")
    sp.add_argument("--names", choices=("element", "int"), default="element")
    sp.add_argument("--swap", action="store_true")

    sp = sub.add_parser("genus", help="genus of K_n")
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=cmd_genus)

    sp = sub.add_parser("search", help="search a ladder scaffold for current assignments")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--mode", choices=(CASCADE, INDEX2), required=True)
    sp.add_argument("--rungs", type=int, default=0)
    sp.add_argument("--shape", help="end shape name from the catalog")
    sp.add_argument("--start", type=int, default=1, help="second component of the first rung current")
    sp.add_argument("--budget", type=float, default=600.0, help="seconds")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--first", action="store_true", help="stop at the first solution (default)")
    group.add_argument("--all", action="store_true", help="enumerate every solution")
    sp.add_argument("--limit", type=int, help="stop after this many solutions")
    sp.add_argument("--seed", type=int, help="shuffle value order deterministically")
    sp.add_argument("--engine", choices=("backtrack", "sat"), default="backtrack")
    sp.add_argument("--even-only", action="store_true", help="restrict every current to the even subgroup")
    sp.add_argument("--no-symmetry", action="store_true", help="emit both members of each negation pair")
    sp.add_argument("--out", help="directory for solution files")
    sp.set_defaults(func=cmd_search)
    return p


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help, --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
