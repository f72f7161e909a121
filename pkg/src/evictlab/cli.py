"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
3 capacity exceeded, 4 solver timeout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path
from typing import Optional

from . import __version__
from .bounds import bound_report, game_feasible
from .cache import Cache, CacheRecord, resolve_path
from .canon import CANON_CAP, canonical_graph6
from .families import generate
from .game import SolverTimeout, solve_worklist
from .graph import CapacityError, EdgeListError, Graph, Graph6Error, emit_edge_list, emit_graph6, emit_json, parse_edge_list, parse_graph6
from .hunt import PredicateError, builtin_stream, file_stream, hunt, parse_predicate
from .play import Session, Unplayable
from .suites import SUITES, run_suite

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_TIMEOUT = 4


class UsageError(Exception):
    pass


def _deadline(args: argparse.Namespace) -> Optional[float]:
    ms = getattr(args, "timeout_ms", None)
    return time.monotonic() + ms / 1000 if ms else None


def _workers(args: argparse.Namespace) -> int:
    if args.workers is not None:
        return args.workers
    env = os.environ.get("EVICTLAB_WORKERS")
    if not env:
        return 1
    try:
        return max(1, int(env))
    except ValueError:
        raise UsageError(f"EVICTLAB_WORKERS must be an integer, got {env!r}") from None


def load_graph(args: argparse.Namespace) -> Graph:
    sources = [s for s in (args.family, args.g6, args.edges) if s is not None]
    if len(sources) != 1:
        raise UsageError("give exactly one of --family, --g6, --edges")
    if args.family is not None:
        try:
            g = generate(args.family)
        except CapacityError:
            raise
        except (ValueError, TypeError) as exc:
            raise UsageError(f"bad family spec: {exc}") from None
        return Graph(g.n, g.adj, g.name or args.family)
    if args.g6 is not None:
        g = parse_graph6(args.g6)
        return Graph(g.n, g.adj, args.g6.strip())
    try:
        text = Path(args.edges).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {args.edges}: {exc}") from None
    g = parse_edge_list(text)
    return Graph(g.n, g.adj, Path(args.edges).name)


def _table(rows: dict) -> str:
    width = max(map(len, rows))
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows.items())


# ---------------------------------------------------------------- commands


def cmd_solve(args: argparse.Namespace) -> int:
    g = load_graph(args)
    if args.k is not None:
        if not 1 <= args.k <= g.n:
            raise UsageError(f"--k must lie in 1..{g.n}")
        if not game_feasible(g, args.k):
            raise CapacityError(f"too many configurations to solve {g.n} vertices with {args.k} guards")
    deadline = _deadline(args)
    cache = None if args.no_cache else Cache(resolve_path(args.cache))
    hit = cache.lookup(g) if cache else None
    if hit is not None and hit.eviction is not None:
        report = bound_report(g, known=(hit.eviction, hit.eternal))
    else:
        report = bound_report(g, deadline=deadline)
        if cache and report.eviction is not None:
            cache.put(CacheRecord.from_report(g, report))
    out = report.to_json()
    out["graph6"] = emit_graph6(g)
    if g.n <= CANON_CAP:
        out["canonical"] = canonical_graph6(g)
    out["cached"] = hit is not None and hit.eviction is not None
    if report.eviction is not None and report.eviction > 1:
        out["insufficient"] = f"{report.eviction - 1} guards insufficient"
    if args.k is not None:
        fp = solve_worklist(g, args.k, deadline=deadline)
        out["k"] = {
            "guards": args.k,
            "defensible": bool(fp.safe),
            "dominating_sets": len(fp.dominating),
            "safe_set_size": len(fp.safe),
            "certificate_depth": None if fp.safe or not fp.dominating else max(fp.depth.values()),
        }
        if not fp.safe:
            out["k"]["verdict"] = f"{args.k} guards insufficient"
    if args.format == "json":
        print(json.dumps(out, sort_keys=True))
    elif args.format == "g6":
        print(out["graph6"])
    else:
        rows = {key: out[key] for key in ("name", "graph6", "n", "alpha", "gamma", "theta", "eviction", "eternal")}
        rows["f(alpha) bound"] = out["f_alpha_bound"]
        for key, val in out["checks"].items():
            rows[f"check {key}"] = {True: "ok", False: "VIOLATED", None: "n/a"}[val]
        if "insufficient" in out:
            rows["note"] = out["insufficient"]
        if "k" in out:
            for key, val in out["k"].items():
                rows[f"k: {key}"] = val
        if report.skipped:
            rows["skipped"] = report.skipped
        print(_table(rows))
    return EXIT_OK if report.ok else EXIT_FAILED


def cmd_verify(args: argparse.Namespace) -> int:
    checks = run_suite(args.suite)
    for c in checks:
        print(c.line())
    failed = sum(not c.passed for c in checks)
    print(f"{len(checks) - failed}/{len(checks)} passed")
    return EXIT_FAILED if failed else EXIT_OK


def cmd_hunt(args: argparse.Namespace) -> int:
    try:
        pred = parse_predicate(args.predicate)
    except PredicateError as exc:
        raise UsageError(str(exc)) from None
    if args.input is not None:
        if args.input == "-":
            stream = file_stream(sys.stdin)
        else:
            try:
                stream = file_stream(Path(args.input).read_text().splitlines())
            except OSError as exc:
                raise UsageError(f"cannot read {args.input}: {exc}") from None
    else:
        stream = builtin_stream(args.max_n, connected=not args.all)
    for rec in hunt(stream, pred, workers=_workers(args), timeout_ms=args.timeout_ms):
        if "summary" in rec or args.verbose or rec.get("finding") or rec["status"] != "ok":
            print(json.dumps(rec, sort_keys=True), flush=True)
    return EXIT_OK


def cmd_play(args: argparse.Namespace) -> int:
    g = load_graph(args)
    try:
        session = Session(g, args.k, args.role, sys.stdin, sys.stdout, max_rounds=args.max_rounds)
    except Unplayable as exc:
        print(f"cannot play: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    session.run()
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        g = generate(args.spec)
    except CapacityError:
        raise
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad family spec: {exc}") from None
    g = Graph(g.n, g.adj, g.name or args.spec)
    if args.format == "g6":
        print(emit_graph6(g))
    elif args.format == "edges":
        sys.stdout.write(emit_edge_list(g))
    else:
        print(emit_json(g))
    return EXIT_OK


def cmd_cache(args: argparse.Namespace) -> int:
    cache = Cache(resolve_path(args.cache))
    if args.action == "list":
        for rec in cache.records():
            vals = " ".join(f"{k}={v}" for k, v in rec.values().items())
            print(f"{rec.graph6}  {vals}  v{rec.solver_version}")
        return EXIT_OK
    if args.action == "clear":
        print(f"removed {cache.clear()} records from {cache.path}")
        return EXIT_OK
    total = sum(1 for _ in cache.records())
    bad = cache.verify(args.sample, deadline=_deadline(args))
    for rec, fresh in bad:
        print(f"MISMATCH {rec.graph6}: cached {rec.values()} fresh {fresh}")
    print(f"{min(args.sample, total) - len(bad)}/{min(args.sample, total)} sampled records re-verified")
    return EXIT_FAILED if bad else EXIT_OK


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="evictlab", description="Exact solver and experiments for the eviction game.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--family", help="family spec, e.g. cycle:7, kmn:3,4, join(complete:2;empty:4)")
    graph.add_argument("--g6", help="graph6 record")
    graph.add_argument("--edges", metavar="FILE", help="edge list file: 'n m' then 'u v' lines")

    timing = argparse.ArgumentParser(add_help=False)
    timing.add_argument("--timeout-ms", type=int, default=None, help="solver time limit per graph")

    caching = argparse.ArgumentParser(add_help=False)
    caching.add_argument("--cache", metavar="PATH", help="cache file (default: $EVICTLAB_CACHE or ~/.cache/evictlab)")

    s = sub.add_parser("solve", parents=[graph, timing, caching], help="invariants, game numbers and bounds")
    s.add_argument("--k", type=int, help="also solve the game for exactly this many guards")
    s.add_argument("--format", choices=("json", "table", "g6"), default="json")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a named verification suite")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.set_defaults(func=cmd_verify)

    h = sub.add_parser("hunt", parents=[timing], help="search graphs for a predicate")
    h.add_argument("--input", metavar="FILE", help="graph6 stream ('-' for stdin); default is the builtin generator")
    h.add_argument("--max-n", type=int, default=7, help="largest order for the builtin generator")
    h.add_argument("--all", action="store_true", help="include disconnected graphs")
    h.add_argument("--predicate", default="ratio-exceeds:4/3",
                   help="ratio-exceeds:p/q, alpha3-eviction5 or eternal-lt-eviction")
    h.add_argument("--workers", type=int, default=None, help="worker processes (default $EVICTLAB_WORKERS or 1)")
    h.add_argument("--verbose", action="store_true", help="print every graph, not only findings")
    h.set_defaults(func=cmd_hunt)

    pl = sub.add_parser("play", parents=[graph], help="play the eviction game against the engine")
    pl.add_argument("--k", type=int, required=True)
    pl.add_argument("--role", choices=("attacker", "defender"), default="attacker", help="your side")
    pl.add_argument("--max-rounds", type=int, default=None)
    pl.set_defaults(func=cmd_play)

    gen = sub.add_parser("generate", help="emit a named graph")
    gen.add_argument("spec")
    gen.add_argument("--format", choices=("g6", "edges", "json"), default="g6")
    gen.set_defaults(func=cmd_generate)

    c = sub.add_parser("cache", parents=[caching, timing], help="inspect the result cache")
    c.add_argument("action", choices=("list", "clear", "verify"))
    c.add_argument("--sample", type=int, default=5)
    c.set_defaults(func=cmd_cache)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, Graph6Error, EdgeListError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT


if __name__ == "__main__":
    sys.exit(main())
