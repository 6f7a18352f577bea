"""Command-line entry point: ``pachner validate|connect|scramble|sig``.

Triangulation arguments accept a signature, a path to a gluing-table (or
signature) file, ``fixture:NAME`` for a built-in fixture, or ``-`` for stdin.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from random import Random

from . import fixtures
from .errors import NoEligibleMove, PachnerError
from .kernel import Triangulation, format_gluing_table, parse_gluing_table, validate, z2_homology_ranks
from .search import SearchConfig, Strategy, compare_strategies, connect, scramble
from .signature import ALPHABET, decode, encode

log = logging.getLogger("pachner")

CSV_COLUMNS = [
    "case_id", "strategy", "connected", "height", "nodes_23_32", "nodes_20",
    "terminated_early", "wall_ms", "height_gap", "error",
]

EXIT_OK, EXIT_ERROR, EXIT_PSEUDO, EXIT_INVALID = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _looks_like_signature(text: str) -> bool:
    return bool(text) and all(c in ALPHABET for c in text)


def parse_triangulation(text: str) -> Triangulation:
    """A triangulation from either a bare signature or a gluing table."""
    body = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if len(body) == 1 and _looks_like_signature(body[0]):
        return decode(body[0])
    return parse_gluing_table(text)


def load_triangulation(ref: str) -> Triangulation:
    if ref.startswith("fixture:"):
        name = ref.split(":", 1)[1]
        if name not in fixtures.ALL:
            raise UsageError(f"unknown fixture {name!r}; choose from {', '.join(fixtures.ALL)}")
        return parse_gluing_table(fixtures.ALL[name])
    if ref == "-":
        return parse_triangulation(sys.stdin.read())
    path = Path(ref)
    if path.is_file():
        return parse_triangulation(path.read_text())
    if _looks_like_signature(ref):
        return decode(ref)
    raise UsageError(f"{ref!r} is neither a file, a fixture nor a signature")


def read_casefile(text: str) -> list[tuple[str, list[str]]]:
    """Parse ``case <id>`` blocks, each followed by one triangulation reference per line."""
    cases: list[tuple[str, list[str]]] = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line.startswith("#"):
            continue
        if not line:
            current = None
            continue
        if line.startswith("case "):
            current = (line[5:].strip(), [])
            cases.append(current)
        elif current is None:
            raise UsageError(f"line {lineno}: expected 'case <id>'")
        else:
            current[1].append(line)
    ids = [c for c, _ in cases]
    if len(set(ids)) != len(ids):
        raise UsageError("case ids must be unique")
    return cases


# ---------------------------------------------------------------------------
# validate


def cmd_validate(args) -> int:
    try:
        tri = load_triangulation(args.input)
    except (PachnerError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = validate(tri)
    info = report.as_dict()
    info["size"] = tri.size
    if report.is_pseudo_manifold:
        info["z2_homology"] = list(z2_homology_ranks(tri))
        info["signature"] = tri.signature()
    if args.format == "json":
        print(json.dumps(info, indent=2))
    else:
        if report.is_closed_3_manifold:
            verdict = "closed 3-manifold"
        elif report.is_pseudo_manifold:
            verdict = "pseudo-manifold"
        else:
            verdict = "invalid"
        print(f"{verdict}: {tri.size} tetrahedra")
        for key, value in info.items():
            print(f"  {key}: {value}")
    if report.is_closed_3_manifold:
        return EXIT_OK
    return EXIT_PSEUDO if report.is_pseudo_manifold else EXIT_INVALID


# ---------------------------------------------------------------------------
# connect


def _row(case_id, result=None, gap=None, error=""):
    row = dict.fromkeys(CSV_COLUMNS, "")
    row["case_id"] = case_id
    row["error"] = error
    if result is not None:
        row.update(
            strategy=result.strategy.value,
            connected=result.connected,
            height="" if result.height is None else result.height,
            nodes_23_32=result.nodes_23_32,
            nodes_20=result.nodes_20,
            terminated_early=result.terminated_early,
            wall_ms=f"{result.wall_ms:.1f}",
            height_gap="" if gap is None else gap,
        )
    return row


def _write_paths(directory: Path, case_id: str, result) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for (a, b), seq in sorted(result.paths.items()):
        name = f"{case_id}.{result.strategy.value}.{a}-{b}.seq"
        (directory / name).write_text(seq.dumps())


def run_case(case_id, refs, args) -> list[dict]:
    try:
        seeds = [load_triangulation(ref) for ref in refs]
        opts = dict(
            max_extra_tets=args.max_extra_tets,
            node_limit=args.node_limit,
            emit_paths=args.emit_paths is not None,
            deterministic=args.threads <= 1,
            workers=args.threads,
        )
        if args.strategy == "all":
            comparison = compare_strategies(seeds, **opts)
            results = comparison.results()
            gap = comparison.height_gap
        else:
            results = [connect(seeds, SearchConfig(Strategy(args.strategy), **opts))]
            gap = None
    except (PachnerError, UsageError, OSError, ValueError) as exc:
        log.debug("case %s failed", case_id, exc_info=True)
        strategies = [s.value for s in Strategy] if args.strategy == "all" else [args.strategy]
        rows = []
        for s in strategies:
            row = _row(case_id, error=f"{type(exc).__name__}: {exc}")
            row["strategy"] = s
            rows.append(row)
        return rows
    if args.emit_paths is not None:
        for result in results:
            _write_paths(Path(args.emit_paths), case_id, result)
    return [_row(case_id, r, gap) for r in results]


def cmd_connect(args) -> int:
    try:
        text = sys.stdin.read() if args.casefile == "-" else Path(args.casefile).read_text()
        cases = read_casefile(text)
    except (UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    rows = []
    for case_id, refs in cases:
        log.info("case %s: %d seeds", case_id, len(refs))
        rows.extend(run_case(case_id, refs, args))

    if args.format == "json":
        out = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out = buf.getvalue()
    if args.csv:
        Path(args.csv).write_text(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# scramble


def cmd_scramble(args) -> int:
    try:
        tri = load_triangulation(args.input)
    except (PachnerError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = validate(tri)
    if not report.is_pseudo_manifold:
        print("error: scrambling needs a closed triangulation without invalid edges", file=sys.stderr)
        return EXIT_ERROR
    if args.max_size is not None and args.max_size < tri.size:
        print("error: --max-size is below the input size", file=sys.stderr)
        return EXIT_ERROR
    expected = (report.material_vertex_count, z2_homology_ranks(tri))
    rng = Random(args.seed)
    status = EXIT_OK
    for _ in range(args.count):
        try:
            out = scramble(tri, args.steps, args.max_size, rng.randrange(2**63))
        except NoEligibleMove as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_ERROR
        print(out.signature())
        if args.check:
            got = (validate(out).material_vertex_count, z2_homology_ranks(out))
            if got != expected:
                print(f"check failed for {out.signature()}: {got} != {expected}", file=sys.stderr)
                status = EXIT_ERROR
    return status


# ---------------------------------------------------------------------------
# sig


def cmd_sig(args) -> int:
    try:
        if args.action == "encode":
            print(encode(load_triangulation(args.input)))
        else:
            text = Path(args.input).read_text().strip() if Path(args.input).is_file() else args.input
            print(format_gluing_table(decode(text), comment=text), end="")
    except (PachnerError, UsageError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pachner",
        description="Triangulated 3-manifolds: validation, signatures and move-connectivity searches.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="classify a triangulation (exit 0/2/3, 1 on parse errors)")
    p.add_argument("input", help="signature, gluing-table file, fixture:NAME or -")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("connect", help="run connection searches over a case file")
    p.add_argument("casefile", help="file of 'case <id>' blocks, or -")
    p.add_argument("--strategy", choices=[s.value for s in Strategy] + ["all"], default="all")
    p.add_argument("--max-extra-tets", type=int, default=3)
    p.add_argument("--node-limit", type=int, default=SearchConfig.node_limit)
    p.add_argument("--emit-paths", metavar="DIR", help="write replayable move sequences here")
    p.add_argument("--csv", metavar="FILE", help="write the table here instead of stdout")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--threads", type=int, default=1,
                   help="worker processes; more than 1 turns off deterministic mode")
    p.set_defaults(func=cmd_connect)

    p = sub.add_parser("scramble", help="random 2-3/3-2 walks from a triangulation")
    p.add_argument("input")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--check", action="store_true",
                   help="confirm each output keeps the input's vertex count and Z/2 homology")
    p.set_defaults(func=cmd_scramble)

    p = sub.add_parser("sig", help="encode a triangulation or decode a signature")
    p.add_argument("action", choices=("encode", "decode"))
    p.add_argument("input")
    p.set_defaults(func=cmd_sig)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "steps", 0) < 0 or getattr(args, "count", 0) < 0:
        print("error: counts must be non-negative", file=sys.stderr)
        return EXIT_ERROR
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
