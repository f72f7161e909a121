"""Named verification suites behind ``evictlab verify``."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb
from typing import Callable

from . import bounds, families
from .canon import all_graphs
from .game import (
    attacker_certificate,
    delaying_defender,
    eternal_domination_number,
    eviction_number,
    eviction_safe_set,
    simulate,
)
from .graph import Graph, bits
from .invariants import (
    clique_cover_number,
    domination_number,
    independence_number,
    is_triangle_free,
)
from .strategies import find_ramsey_array, matching_defend, matching_init, ramsey_defend, ramsey_domination_witness


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def _eq(name: str, got, want) -> Check:
    return Check(name, got == want, f"got {got}, expected {want}")


def suite_paths() -> list[Check]:
    return [_eq(f"e(P{n})", eviction_number(families.path(n)), ceil(n / 2)) for n in range(1, 13)]


def suite_cycles() -> list[Check]:
    want = {3: 1, 5: 2}
    return [_eq(f"e(C{n})", eviction_number(families.cycle(n)), want.get(n, ceil(n / 2))) for n in range(3, 13)]


def suite_bipartite() -> list[Check]:
    out = []
    for m in range(1, 6):
        for n in range(m, 11 - m):
            out.append(_eq(f"e(K{m},{n})", eviction_number(families.complete_bipartite(m, n)), max(m, n)))
    return out


def suite_gk() -> list[Check]:
    out = []
    for k in (1, 2):
        g = families.gk(k)
        out.append(_eq(f"alpha(G_{k})", independence_number(g)[0], 3 * k + 1))
        out.append(_eq(f"theta(G_{k})", clique_cover_number(g)[0], 4 * k + 1))
        out.append(_eq(f"e(G_{k})", eviction_number(g), 4 * k + 1))
    c7 = families.cycle(7)
    ratio = Fraction(eviction_number(c7), independence_number(c7)[0])
    out.append(_eq("e(C7)/alpha(C7)", ratio, Fraction(4, 3)))
    return out


def suite_anomaly() -> list[Check]:
    out = []
    for t in (2, 3):
        out.append(_eq(f"e(K1 + (K2 v K{t}bar))", eviction_number(families.anomaly(t)), 2))
        out.append(_eq(f"e(... + bridge), t={t}", eviction_number(families.anomaly_bridged(t)), t + 1))
    out.append(Check("G2 defended by 4 guards", bool(eviction_safe_set(families.g2(), 4))))
    cert = attacker_certificate(families.g2_prime(), 4)
    problems = cert.verify()
    out.append(Check("G2' 4-guard attacker certificate", not problems, f"depth {cert.max_depth}"))
    return out


def suite_spider() -> list[Check]:
    return [_eq(f"e(Sp(2;{k}))", eviction_number(families.spider(k)), k + 1) for k in (2, 3, 4)]


def suite_universal() -> list[Check]:
    out = []
    for m in range(3, 7):
        g = families.universal_pair(m)
        out.append(_eq(f"alpha(K2 v K{m}bar)", independence_number(g)[0], m))
        out.append(_eq(f"e(K2 v K{m}bar)", eviction_number(g), 1))
    return out


def _small_graphs(max_n: int = 6) -> list[Graph]:
    return [g for n in range(1, max_n + 1) for g in all_graphs(n)]


def suite_bounds_chain() -> list[Check]:
    out = []
    bad = []
    for g in _small_graphs():
        gamma, theta = domination_number(g)[0], clique_cover_number(g)[0]
        alpha = independence_number(g)[0]
        e = eviction_number(g)
        if not gamma <= e <= theta:
            bad.append(f"{g.name}: gamma/e/theta")
        if is_triangle_free(g) and e < alpha:
            bad.append(f"{g.name}: triangle-free")
        ed = eternal_domination_number(g)
        if not alpha <= ed <= comb(alpha + 1, 2):
            bad.append(f"{g.name}: eternal")
    out.append(Check("gamma <= e <= theta, triangle-free, eternal bounds (n <= 6)", not bad, "; ".join(bad[:5])))
    chain = bounds.l_chain(2)
    out.append(_eq("l_chain(2)", [iv.lo for iv in chain] if all(iv.exact for iv in chain) else None, [3, 6, 18]))
    out.append(_eq("l_chain(1)", [iv.lo for iv in bounds.l_chain(1)], [2, 2]))
    out.append(_eq("f(1)", bounds.f_bound(1), 1))
    out.append(_eq("f(2) with c2=18", bounds.f_bound(2, 18), 72))
    out.append(_eq("r(3,3) by exhaustive 2-colouring", bounds.ramsey_brute_force(3, 3), 6))
    return out


def suite_monotonicity() -> list[Check]:
    bad = []
    for g in _small_graphs():
        seen = False
        for k in range(1, g.n + 1):
            now = bool(eviction_safe_set(g, k))
            if seen and not now:
                bad.append(f"{g.name} k={k}")
            seen = seen or now
    return [Check("safe set nonempty at k => nonempty at k+1 (n <= 6)", not bad, "; ".join(bad[:5]))]


def suite_small_alpha() -> list[Check]:
    bad = []
    limits = {1: 1, 2: 2, 3: 5}
    for g in _small_graphs():
        alpha = independence_number(g)[0]
        if alpha in limits:
            e = eviction_number(g)
            if e > limits[alpha] or (alpha == 1 and e != 1):
                bad.append(f"{g.name}: alpha={alpha}, e={e}")
    return [Check("alpha in {1,2,3} => e in {1, <=2, <=5} (n <= 6)", not bad, "; ".join(bad[:5]))]


def suite_strategies(steps: int = 2000, seed: int = 7) -> list[Check]:
    out = []
    rng = random.Random(seed)
    for k in (2, 3):
        g = families.copies(k, families.complete(k + 1))
        arr = find_ramsey_array(g)
        c = arr.initial_configuration()
        bad = 0
        for _ in range(steps):
            v = rng.choice(bits(c))
            if not g.adj[v] & ~c:
                bad += 1
            c = ramsey_defend(arr, c, v)
            ramsey_domination_witness(arr, c)
            bad += not g.is_dominating(c)
        out.append(Check(f"Ramsey array on {k}K{k + 1}", bad == 0, f"{steps} attacks, {bad} violations"))
    bad = 0
    for trial in range(10):
        n = rng.randint(4, 12)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.35])
        s = sum(1 << v for v in range(n) if rng.random() < 0.5) or 1
        state = matching_init(g, s)
        cover = (state.covered & s).bit_count()
        for _ in range(steps // 10):
            v = rng.choice(bits(state.guarded))
            state = matching_defend(state, g, v)
            bad += bool(state.check(g, cover))
    out.append(Check("matching invariant on 10 random regions", bad == 0, f"{bad} violations"))
    cert = attacker_certificate(families.cycle(7), 3)
    start = 0b0010101
    t = simulate(families.cycle(7), delaying_defender(cert), cert, steps=cert.max_depth + 1, start=start)
    out.append(Check("C7 certificate beats 3 guards", t.violation_step is not None, f"violation at step {t.violation_step}"))
    return out


SUITES: dict[str, Callable[[], list[Check]]] = {
    "paths": suite_paths,
    "cycles": suite_cycles,
    "bipartite": suite_bipartite,
    "gk": suite_gk,
    "anomaly": suite_anomaly,
    "spider": suite_spider,
    "universal": suite_universal,
    "bounds-chain": suite_bounds_chain,
    "monotonicity": suite_monotonicity,
    "small-alpha": suite_small_alpha,
    "strategies": suite_strategies,
}


def run_suite(name: str) -> list[Check]:
    if name == "all":
        return [c for fn in SUITES.values() for c in fn()]
    return SUITES[name]()
