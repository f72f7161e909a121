"""JSON-lines result cache keyed by graph6 (plus a canonical alias for small graphs)."""

from __future__ import annotations

import json
import os
import random
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterator, Optional

from . import __version__
from .bounds import BoundReport, bound_report
from .canon import CANON_CAP, canonical_graph6
from .graph import Graph, emit_graph6, parse_graph6

CANON_ALIAS_CAP = 8
SOLVER_VERSION = __version__
DEFAULT_PATH = Path.home() / ".cache" / "evictlab" / "results.jsonl"


@dataclass
class CacheRecord:
    graph6: str
    canonical: Optional[str]
    alpha: Optional[int]
    gamma: Optional[int]
    theta: Optional[int]
    eviction: Optional[int]
    eternal: Optional[int]
    solver_version: str
    timestamp: float

    @classmethod
    def from_report(cls, g: Graph, report: BoundReport) -> CacheRecord:
        return cls(
            graph6=emit_graph6(g),
            canonical=canonical_alias(g),
            alpha=report.alpha,
            gamma=report.gamma,
            theta=report.theta,
            eviction=report.eviction,
            eternal=report.eternal,
            solver_version=SOLVER_VERSION,
            timestamp=time.time(),
        )

    @classmethod
    def from_json(cls, obj: dict) -> CacheRecord:
        rec = cls(**obj)
        parse_graph6(rec.graph6)  # a record whose key does not parse is rejected outright
        return rec

    def values(self) -> dict:
        return {k: getattr(self, k) for k in ("alpha", "gamma", "theta", "eviction", "eternal")}


def canonical_alias(g: Graph) -> Optional[str]:
    return canonical_graph6(g) if g.n <= min(CANON_ALIAS_CAP, CANON_CAP) else None


def resolve_path(flag: Optional[str]) -> Path:
    """Flag beats environment beats the default location."""
    if flag:
        return Path(flag)
    env = os.environ.get("EVICTLAB_CACHE")
    return Path(env) if env else DEFAULT_PATH


class Cache:
    def __init__(self, path: Path):
        self.path = Path(path)

    def records(self) -> Iterator[CacheRecord]:
        if not self.path.exists():
            return
        with self.path.open() as fh:
            for line in fh:
                line = line.strip()
                if line:
                    yield CacheRecord.from_json(json.loads(line))

    def lookup(self, g: Graph) -> Optional[CacheRecord]:
        key = emit_graph6(g)
        alias = canonical_alias(g)
        found = None
        for rec in self.records():
            if rec.solver_version != SOLVER_VERSION:
                continue
            if rec.graph6 == key or (alias is not None and rec.canonical == alias):
                found = rec  # later lines win
        return found

    def put(self, rec: CacheRecord) -> None:
        self.path.parent.mkdir(parents=True, exist_ok=True)
        with self.path.open("a") as fh:
            fh.write(json.dumps(asdict(rec), sort_keys=True) + "\n")

    def clear(self) -> int:
        n = sum(1 for _ in self.records())
        if self.path.exists():
            self.path.unlink()
        return n

    def verify(self, sample: int, seed: int = 0, deadline: Optional[float] = None) -> list[tuple[CacheRecord, dict]]:
        """Re-solve up to ``sample`` records; returns (record, fresh values) for every mismatch."""
        recs = list(self.records())
        picked = random.Random(seed).sample(recs, min(sample, len(recs)))
        bad = []
        for rec in picked:
            g = parse_graph6(rec.graph6)
            fresh = bound_report(g, with_exact_game=rec.eviction is not None, deadline=deadline)
            now = {"alpha": fresh.alpha, "gamma": fresh.gamma, "theta": fresh.theta,
                   "eviction": fresh.eviction, "eternal": fresh.eternal}
            if now != rec.values():
                bad.append((rec, now))
        return bad
