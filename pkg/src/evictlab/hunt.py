"""Counterexample hunting over graph streams.

Each graph is solved exactly (independence number, eviction number and, when
the predicate needs it, the eternal domination number) and tested against a
predicate.  Results come back in input order whatever the worker count, so the
finding set is deterministic.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .bounds import game_feasible
from .canon import all_graphs, canonical_graph6
from .game import SolverTimeout, eternal_domination_number, eviction_number
from .graph import Graph, emit_graph6, iter_graph6, parse_graph6
from .invariants import clique_cover_number, independence_number

DEDUP_CAP = 8


class PredicateError(ValueError):
    pass


@dataclass(frozen=True)
class HuntPredicate:
    tag: str
    threshold: Optional[Fraction] = None

    @property
    def needs_eternal(self) -> bool:
        return self.tag == "eternal-lt-eviction"

    def __str__(self) -> str:
        if self.tag == "ratio-exceeds":
            return f"ratio-exceeds:{self.threshold}"
        return self.tag

    def evaluate(self, alpha: int, eviction: int, eternal: Optional[int]):
        """``(is_finding, value)``."""
        if self.tag == "ratio-exceeds":
            r = Fraction(eviction, alpha)
            return r > self.threshold, str(r)
        if self.tag == "alpha3-eviction5":
            return alpha == 3 and eviction == 5, eviction
        return eternal < eviction, eviction - eternal


def parse_predicate(text: str) -> HuntPredicate:
    tag, _, arg = text.partition(":")
    if tag == "ratio-exceeds":
        try:
            q = Fraction(arg or "4/3")
        except (ValueError, ZeroDivisionError) as exc:
            raise PredicateError(f"bad ratio {arg!r}") from exc
        return HuntPredicate(tag, q)
    if tag in ("alpha3-eviction5", "eternal-lt-eviction") and not arg:
        return HuntPredicate(tag)
    raise PredicateError(f"unknown predicate {text!r}; use ratio-exceeds:p/q, alpha3-eviction5 or eternal-lt-eviction")


def examine(job: tuple[str, HuntPredicate, Optional[int]]) -> dict:
    """Solve one graph6 record.  Runs inside worker processes, so arguments stay picklable."""
    g6, pred, timeout_ms = job
    g = parse_graph6(g6)
    out: dict = {"graph6": g6, "n": g.n}
    theta = clique_cover_number(g)[0]
    if not game_feasible(g, theta):
        out["status"] = "skipped"
        out["reason"] = "too many configurations for exact solving"
        return out
    deadline = time.monotonic() + timeout_ms / 1000 if timeout_ms else None
    try:
        alpha = independence_number(g)[0]
        eviction = eviction_number(g, deadline)
        eternal = eternal_domination_number(g, deadline) if pred.needs_eternal else None
    except SolverTimeout:
        out["status"] = "timeout"
        return out
    hit, value = pred.evaluate(alpha, eviction, eternal)
    out.update(status="ok", alpha=alpha, eviction=eviction, eternal=eternal,
               ratio=str(Fraction(eviction, alpha)), finding=hit, value=value)
    return out


def builtin_stream(max_n: int, connected: bool = True) -> Iterator[str]:
    for n in range(1, max_n + 1):
        for g in all_graphs(n, connected=connected):
            yield g.name


def file_stream(lines: Iterable[str]) -> Iterator[str]:
    for _, g in iter_graph6(lines):
        yield emit_graph6(g)


def dedup(stream: Iterable[str], stats: dict) -> Iterator[str]:
    """Drop records isomorphic to an earlier one (only checkable for n <= DEDUP_CAP)."""
    seen: set[str] = set()
    for g6 in stream:
        g = parse_graph6(g6)
        if g.n <= DEDUP_CAP:
            key = canonical_graph6(g)
            if key in seen:
                stats["duplicates"] += 1
                continue
            seen.add(key)
        yield g6


def hunt(stream: Iterable[str], pred: HuntPredicate, workers: int = 1,
         timeout_ms: Optional[int] = None) -> Iterator[dict]:
    """Yield one record per non-duplicate graph in input order, then ``{"summary": ...}``.

    Findings carry ``"finding": True``; timeouts and skips are yielded too so
    nothing vanishes silently.
    """
    stats = {"graphs": 0, "duplicates": 0, "findings": 0, "timeouts": 0, "skipped": 0}
    best: Optional[Fraction] = None
    argmax: list[str] = []
    jobs = ((g6, pred, timeout_ms) for g6 in dedup(stream, stats))
    if workers > 1:
        pool = ProcessPoolExecutor(max_workers=workers)
        results = pool.map(examine, jobs, chunksize=8)
    else:
        pool = None
        results = map(examine, jobs)
    try:
        for rec in results:
            stats["graphs"] += 1
            if rec["status"] == "timeout":
                stats["timeouts"] += 1
            elif rec["status"] == "skipped":
                stats["skipped"] += 1
            else:
                stats["findings"] += rec["finding"]
                r = Fraction(rec["ratio"])
                if best is None or r > best:
                    best, argmax = r, [rec["graph6"]]
                elif r == best:
                    argmax.append(rec["graph6"])
            rec["predicate"] = str(pred)
            yield rec
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
    yield {"summary": {**stats, "predicate": str(pred),
                       "max_ratio": str(best) if best is not None else None, "argmax": argmax}}
