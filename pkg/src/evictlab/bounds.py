"""Ramsey-number intervals, the nested Ramsey chain c_k, the bound f(k) and per-graph reports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from itertools import combinations
from typing import Optional, Union

from .graph import Graph, bits
from .invariants import clique_cover_number, domination_number, independence_number, is_triangle_free

HUGE_BITS = 1 << 20  # past this, upper bounds are carried as log10 only

DEFINITION = "definition"
BRUTE_FORCE = "brute-force"
ANCHORED = "anchored"
EXTERNAL = "external"
DERIVED = "derived-bound"


@dataclass(frozen=True)
class Interval:
    """Closed integer interval; ``hi`` is ``None`` when only ``hi_log10`` is tracked."""

    lo: int
    hi: Optional[int]
    hi_log10: Optional[float] = None
    source: str = DERIVED

    @property
    def exact(self) -> bool:
        return self.hi is not None and self.lo == self.hi

    @property
    def log10_hi(self) -> float:
        if self.hi is None:
            return self.hi_log10
        return _log10(self.hi)

    def __str__(self) -> str:
        if self.exact:
            return str(self.lo)
        return f"[{_fmt(self.lo)}, {_fmt_hi(self)}]"

    def to_json(self) -> dict:
        out = {"lo": _json_int(self.lo), "exact": self.exact, "source": self.source}
        out["hi"] = _json_int(self.hi) if self.hi is not None else f"~1e{self.hi_log10:.6g}"
        return out


def _log10(x: int) -> float:
    if x <= 0:
        raise ValueError("log of non-positive value")
    nbits = x.bit_length()
    if nbits < 1000:
        return math.log10(x)
    shift = nbits - 64
    return math.log10(x >> shift) + shift * math.log10(2)


def _fmt(x: int) -> str:
    s = str(x) if x.bit_length() < 200 else f"~1e{_log10(x):.6g}"
    return s


def _fmt_hi(iv: Interval) -> str:
    return _fmt(iv.hi) if iv.hi is not None else f"~1e{iv.hi_log10:.6g}"


def _json_int(x: int) -> Union[int, str]:
    return x if x.bit_length() < 63 else _fmt(x)


# ---------------------------------------------------------------- table


@dataclass
class RamseyTable:
    entries: dict[tuple[int, int], tuple[int, int, str]] = field(default_factory=dict)

    @classmethod
    def load(cls, text: Optional[str] = None) -> RamseyTable:
        if text is None:
            text = resources.files("evictlab").joinpath("data/ramsey.txt").read_text()
        table = cls()
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            s, t, lo, hi, source = line.split()
            table.add(int(s), int(t), int(lo), int(hi), source)
        return table

    def add(self, s: int, t: int, lo: int, hi: int, source: str) -> None:
        if lo > hi:
            raise ValueError(f"r({s},{t}): lower bound {lo} exceeds upper bound {hi}")
        self.entries[(min(s, t), max(s, t))] = (lo, hi, source)

    def get(self, s: int, t: int) -> Optional[tuple[int, int, str]]:
        return self.entries.get((min(s, t), max(s, t)))


_DEFAULT: Optional[RamseyTable] = None


def default_table() -> RamseyTable:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = RamseyTable.load()
    return _DEFAULT


# ---------------------------------------------------------------- r(s, t)


def _lower(s: int, t: int, table: RamseyTable) -> int:
    # (s-1) copies of K_{t-1}: no independent s-set, no t-clique
    lo = (s - 1) * (t - 1) + 1
    # r grows by at least one per unit step in either argument
    for (a, b), (elo, _, _) in table.entries.items():
        for x, y in ((a, b), (b, a)):
            if x <= s and y <= t:
                lo = max(lo, elo + (s - x) + (t - y))
    return lo


@lru_cache(maxsize=None)
def _upper_small(s: int, t: int, table_id: int) -> int:
    table = _TABLES[table_id]
    if s == 1 or t == 1:
        return 1
    if s == 2:
        return t
    if t == 2:
        return s
    entry = table.get(s, t)
    if entry:
        return entry[1]
    return min(math.comb(s + t - 2, s - 1), _upper_small(s - 1, t, table_id) + _upper_small(s, t - 1, table_id))


_TABLES: dict[int, RamseyTable] = {}


def _upper(s: int, t: int, table: RamseyTable) -> int:
    _TABLES[id(table)] = table
    if s + t <= 400:
        return _upper_small(s, t, id(table))
    a, b = min(s, t), max(s, t)
    return math.comb(a + b - 2, a - 1)


def _upper_log10(s: int, log_t: float) -> float:
    # binom(t + s - 2, s - 1) <= (t + s)^(s-1) / (s-1)!
    return (s - 1) * log_t - math.lgamma(s) / math.log(10) + (s - 1) * 1e-12


def ramsey_number(s: int, t: int, table: Optional[RamseyTable] = None) -> Interval:
    """Exact value when known, otherwise an interval from the table and standard bounds."""
    if s < 1 or t < 1:
        raise ValueError("Ramsey arguments must be positive")
    table = table or default_table()
    if s == 1 or t == 1:
        return Interval(1, 1, source=DEFINITION)
    if s == 2 or t == 2:
        v = max(s, t)
        return Interval(v, v, source=DEFINITION)
    entry = table.get(s, t)
    if entry:
        return Interval(entry[0], entry[1], source=entry[2])
    return Interval(_lower(s, t, table), _upper(s, t, table), source=DERIVED)


def ramsey_brute_force(s: int, t: int, max_n: int = 6) -> Optional[int]:
    """Least n <= max_n such that every n-vertex graph has an independent s-set or a t-clique.

    Exhaustive over all labelled graphs; only practical for n <= 6.
    """
    for n in range(1, max_n + 1):
        pairs = list(combinations(range(n), 2))
        forced = True
        for code in range(1 << len(pairs)):
            adj = [0] * n
            for i, (u, v) in enumerate(pairs):
                if code >> i & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
            if not _has_clique(adj, t, (1 << n) - 1) and not _has_independent(adj, s, n):
                forced = False
                break
        if forced:
            return n
    return None


def _has_clique(adj: list[int], size: int, cand: int) -> bool:
    if size == 0:
        return True
    if cand.bit_count() < size:
        return False
    for v in bits(cand):
        cand &= ~(1 << v)
        if _has_clique(adj, size - 1, cand & adj[v]):
            return True
    return False


def _has_independent(adj: list[int], size: int, n: int) -> bool:
    full = (1 << n) - 1
    comp = [full & ~a & ~(1 << v) for v, a in enumerate(adj)]
    return _has_clique(comp, size, full)


# ---------------------------------------------------------------- c_k and f(k)


def l_chain(k: int, table: Optional[RamseyTable] = None) -> list[Interval]:
    """[l_k, l_{k-1}, ..., l_0] with l_k = k+1 and l_{j-1} = r(k+1, l_j); l_0 bounds c_k.

    Inexact steps propagate as intervals using monotonicity of r in each argument.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    table = table or default_table()
    chain = [Interval(k + 1, k + 1, source=DEFINITION)]
    s = k + 1
    for _ in range(k):
        prev = chain[-1]
        lo = ramsey_number(s, prev.lo, table).lo
        if prev.hi is not None:
            step = ramsey_number(s, prev.hi, table)
            if prev.exact:
                source = step.source
            else:
                source = DERIVED
            hi = step.hi
            if hi is not None and hi.bit_length() > HUGE_BITS:
                chain.append(Interval(lo, None, _log10(hi), DERIVED))
            else:
                chain.append(Interval(lo, hi, None, source if step.exact and prev.exact else DERIVED))
        else:
            chain.append(Interval(lo, None, _upper_log10(s, prev.hi_log10), DERIVED))
    return chain


def c_bound(k: int, table: Optional[RamseyTable] = None) -> Interval:
    return l_chain(k, table)[-1]


def _geometric(k: int) -> int:
    # (k^(k-1) - 1) / (k - 1) = 1 + k + ... + k^(k-2), always an integer
    return (k ** (k - 1) - 1) // (k - 1)


def f_bound(k: int, c_k: Optional[int] = None) -> int:
    """2 k c_k (k^(k-1) - 1) / (k - 1) for k >= 2, and 1 for k = 1."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        return 1
    if c_k is None:
        raise ValueError("c_k is required for k >= 2")
    return 2 * k * c_k * _geometric(k)


def f_bound_log10(k: int, log10_c: float) -> float:
    if k == 1:
        return 0.0
    return math.log10(2 * k) + log10_c + _log10(_geometric(k))


def s_cascade_bound(k: int, c_k: int, i: int) -> int:
    """Cap k^(i+1) c_k on the i-th peeled set."""
    if not 0 <= i <= max(k - 2, 0):
        raise ValueError(f"i must lie in 0..{k - 2}")
    return k ** (i + 1) * c_k


def s_total_bound(k: int, c_k: int) -> int:
    """Cap k c_k (k^(k-1) - 1) / (k - 1) on the union of all peeled sets; half of f_bound."""
    if k < 2:
        raise ValueError("k must be at least 2")
    return k * c_k * _geometric(k)


def f_alpha(alpha: int, table: Optional[RamseyTable] = None) -> Interval:
    """f(alpha) over the known range of c_alpha; the upper end is the usable bound on e."""
    if alpha <= 1:
        return Interval(1, 1, source=ANCHORED)
    c = c_bound(alpha, table)
    lo = f_bound(alpha, c.lo)
    if c.hi is None:
        return Interval(lo, None, f_bound_log10(alpha, c.hi_log10), DERIVED)
    return Interval(lo, f_bound(alpha, c.hi), None, c.source)


# ---------------------------------------------------------------- reports


GAME_STATE_LIMIT = 400_000


def game_feasible(g: Graph, k_max: int, limit: int = GAME_STATE_LIMIT) -> bool:
    if g.n > 24:
        return False
    return max(math.comb(g.n, k) for k in range(1, k_max + 1)) <= limit


@dataclass
class BoundReport:
    name: str
    n: int
    alpha: int
    gamma: int
    theta: int
    eviction: Optional[int]
    eternal: Optional[int]
    f_alpha: Interval
    checks: dict[str, Optional[bool]]
    skipped: Optional[str] = None

    @property
    def ok(self) -> bool:
        return all(v is not False for v in self.checks.values())

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "alpha": self.alpha,
            "gamma": self.gamma,
            "theta": self.theta,
            "eviction": self.eviction,
            "eternal": self.eternal,
            "f_alpha_bound": self.f_alpha.to_json()["hi"],
            "checks": self.checks,
            "skipped": self.skipped,
        }


def bound_report(g: Graph, with_exact_game: bool = True, deadline: Optional[float] = None,
                 known: Optional[tuple[int, int]] = None) -> BoundReport:
    """Invariants, bounds and consistency checks; ``known`` supplies cached (eviction, eternal) numbers."""
    from . import game  # local import: game depends on invariants only, keep bounds importable alone

    alpha = independence_number(g)[0]
    gamma = domination_number(g)[0]
    theta = clique_cover_number(g)[0]
    fa = f_alpha(alpha)
    eviction = eternal = None
    skipped = None
    if known is not None:
        eviction, eternal = known
    elif with_exact_game:
        if game_feasible(g, theta):
            eviction = game.eviction_number(g, deadline)
            eternal = game.eternal_domination_number(g, deadline)
        else:
            skipped = f"exact game solving skipped: more than {GAME_STATE_LIMIT} configurations per guard count"

    universal = [v for v in range(g.n) if g.adj[v] | 1 << v == g.full]
    checks: dict[str, Optional[bool]] = {"gamma<=alpha<=theta": gamma <= alpha <= theta}
    if eviction is None:
        for key in ("gamma<=eviction<=theta", "eviction<=f(alpha)", "triangle-free=>eviction>=alpha",
                    "small-alpha", "two-universal=>eviction=1"):
            checks[key] = None
    else:
        checks["gamma<=eviction<=theta"] = gamma <= eviction <= theta
        checks["eviction<=f(alpha)"] = fa.hi is None or eviction <= fa.hi
        checks["triangle-free=>eviction>=alpha"] = eviction >= alpha if is_triangle_free(g) else None
        small = {1: eviction == 1, 2: eviction <= 2, 3: eviction <= 5}
        checks["small-alpha"] = small.get(alpha)
        checks["two-universal=>eviction=1"] = eviction == 1 if len(universal) >= 2 else None
    checks["alpha<=eternal<=C(alpha+1,2)"] = (
        alpha <= eternal <= math.comb(alpha + 1, 2) if eternal is not None else None
    )
    return BoundReport(g.name, g.n, alpha, gamma, theta, eviction, eternal, fa, checks, skipped)
