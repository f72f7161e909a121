"""Acceptance criteria, one test each; every run prints a PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import ceil, comb

import pytest

from evictlab import bounds, families
from evictlab.canon import all_graphs
from evictlab.game import (
    ETERNAL,
    EVICTION,
    attacker_certificate,
    eternal_domination_number,
    eviction_number,
    eviction_safe_set,
    solve_naive,
    solve_worklist,
)
from evictlab.graph import Graph, bits
from evictlab.hunt import builtin_stream, hunt, parse_predicate
from evictlab.invariants import clique_cover_number, domination_number, independence_number, is_triangle_free
from evictlab.strategies import find_ramsey_array, matching_defend, matching_init, ramsey_defend, ramsey_domination_witness

RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, started: float, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  criterion {number:>2}: {title}  [{time.monotonic() - started:.1f}s] {detail}".rstrip()
    RESULTS.append(line)
    print(line)


@pytest.fixture(scope="module", autouse=True)
def report(request):
    yield
    tr = request.config.pluginmanager.get_plugin("terminalreporter")
    if tr is not None:
        tr.write_line("")
        tr.write_line("acceptance criteria:")
        for line in RESULTS:
            tr.write_line(line)


def small_graphs(max_n: int) -> list[Graph]:
    return [g for n in range(1, max_n + 1) for g in all_graphs(n)]


def random_graphs(count: int, sizes: tuple[int, ...], seed: int) -> list[Graph]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.choice(sizes)
        p = rng.choice((0.2, 0.35, 0.5, 0.65, 0.8))
        out.append(Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]))
    return out


def test_criterion_01_paths():
    t0 = time.monotonic()
    got = {n: eviction_number(families.path(n)) for n in range(1, 13)}
    bad = {n: e for n, e in got.items() if e != ceil(n / 2)}
    elapsed = time.monotonic() - t0
    ok = not bad and elapsed < 60
    record(1, "e(P_n) = ceil(n/2), n = 1..12", ok, t0, f"mismatches={bad}")
    assert ok


def test_criterion_02_cycles():
    t0 = time.monotonic()
    want = {3: 1, 5: 2, **{n: ceil(n / 2) for n in (4, 6, 7, 8, 9, 10, 11, 12)}}
    bad = {n: e for n in want if (e := eviction_number(families.cycle(n))) != want[n]}
    ok = not bad and time.monotonic() - t0 < 120
    record(2, "e(C3)=1, e(C5)=2, e(C_n)=ceil(n/2) otherwise", ok, t0, f"mismatches={bad}")
    assert ok


def test_criterion_03_complete_bipartite():
    t0 = time.monotonic()
    bad = []
    cases = 0
    for m in range(1, 10):
        for n in range(m, 11 - m):
            cases += 1
            e = eviction_number(families.complete_bipartite(m, n))
            if e != max(m, n):
                bad.append((m, n, e))
    ok = not bad and time.monotonic() - t0 < 120
    record(3, f"e(K_m,n) = max(m,n) for m+n <= 10 ({cases} cases)", ok, t0, f"mismatches={bad}")
    assert ok


def test_criterion_04_gk():
    t0 = time.monotonic()
    rows = []
    ok = True
    for k in (1, 2):
        g = families.gk(k)
        a = independence_number(g)[0]
        th = clique_cover_number(g)[0]
        e = eviction_number(g)
        rows.append((k, a, th, e))
        ok &= a == 3 * k + 1 and th == e == 4 * k + 1
    g2 = families.gk(2)
    ok &= g2.n == 16 and comb(16, 9) == 11440
    ok &= time.monotonic() - t0 < 600
    record(4, "alpha(G_k)=3k+1, e(G_k)=theta(G_k)=4k+1, k=1,2", ok, t0, f"(k, alpha, theta, e)={rows}")
    assert ok


def test_criterion_05_ratio():
    t0 = time.monotonic()
    c7 = families.cycle(7)
    ratio = Fraction(eviction_number(c7), independence_number(c7)[0])
    ok = ratio == Fraction(4, 3)
    record(5, "e(C7)/alpha(C7) = 4/3", ok, t0, f"ratio={ratio}")
    assert ok


def test_criterion_06_edge_addition():
    t0 = time.monotonic()
    rows = []
    ok = True
    for t in (2, 3):
        before = eviction_number(families.anomaly(t))
        after = eviction_number(families.anomaly_bridged(t))
        rows.append((t, before, after))
        ok &= before == 2 and after == t + 1
    record(6, "adding one edge raises e from 2 to t+1, t=2,3", ok, t0, f"(t, before, after)={rows}")
    assert ok


def test_criterion_07_spider():
    t0 = time.monotonic()
    got = {k: eviction_number(families.spider(k)) for k in (2, 3, 4)}
    ok = all(got[k] == k + 1 for k in got)
    record(7, "e(Sp(2;k)) = k+1, k=2,3,4", ok, t0, f"values={got}")
    assert ok


def test_criterion_08_figure_three():
    t0 = time.monotonic()
    cert = attacker_certificate(families.g2_prime(), 4)
    problems = cert.verify()
    defended = bool(eviction_safe_set(families.g2(), 4))
    ok = not problems and defended
    record(8, "4-guard certificate on G2' verifies; G2 defended by 4", ok, t0,
           f"certificate depth={cert.max_depth}, problems={len(problems)}")
    assert ok


def test_criterion_09_universal_pair():
    t0 = time.monotonic()
    rows = [(m, independence_number(families.universal_pair(m))[0], eviction_number(families.universal_pair(m)))
            for m in range(3, 7)]
    ok = all(a == m and e == 1 for m, a, e in rows)
    record(9, "e(K2 v mK1) = 1 with alpha = m, m=3..6", ok, t0, f"(m, alpha, e)={rows}")
    assert ok


def test_criterion_10_property_suite():
    t0 = time.monotonic()
    corpus = small_graphs(6) + random_graphs(200, (7, 8), seed=2024)
    violations = []
    for g in corpus:
        gamma, alpha, theta = domination_number(g)[0], independence_number(g)[0], clique_cover_number(g)[0]
        flags = [bool(eviction_safe_set(g, k)) for k in range(1, g.n + 1)]
        if flags != sorted(flags):
            violations.append((g.name or g.edges(), "monotonicity"))
        e = flags.index(True) + 1
        if e != eviction_number(g):
            violations.append((g.name or g.edges(), "eviction number"))
        if not gamma <= e <= theta:
            violations.append((g.name or g.edges(), "gamma <= e <= theta"))
        if is_triangle_free(g) and e < alpha:
            violations.append((g.name or g.edges(), "triangle-free"))
        if (alpha == 1 and e != 1) or (alpha == 2 and e > 2) or (alpha == 3 and e > 5):
            violations.append((g.name or g.edges(), "small alpha"))
        ed = eternal_domination_number(g)
        if not alpha <= ed <= comb(alpha + 1, 2):
            violations.append((g.name or g.edges(), "eternal bounds"))
    ok = not violations and time.monotonic() - t0 < 1800
    record(10, f"bound chain, monotonicity, triangle-free, small alpha, eternal bounds on {len(corpus)} graphs",
           ok, t0, f"violations={violations[:5]}")
    assert ok


def test_criterion_11_oracle_equivalence():
    t0 = time.monotonic()
    diffs = []
    checked = 0
    for g in small_graphs(6):
        for k in range(1, g.n + 1):
            for game in (EVICTION, ETERNAL):
                checked += 1
                if solve_worklist(g, k, game).safe != solve_naive(g, k, game):
                    diffs.append((g.name, k, game))
    ok = not diffs
    record(11, f"naive and worklist fixed points identical ({checked} solves, n <= 6)", ok, t0, f"discrepancies={diffs[:5]}")
    assert ok


def test_criterion_12_strategy_simulation():
    t0 = time.monotonic()
    rng = random.Random(12)
    violations = 0
    for k in (2, 3):
        g = families.copies(k, families.complete(k + 1))
        arr = find_ramsey_array(g)
        c = arr.initial_configuration()
        for _ in range(10_000):
            v = rng.choice(bits(c))
            col = arr.columns[arr.column_of(v)]
            if not col & ~c:
                violations += 1  # attacked guard has no in-column move
            c = ramsey_defend(arr, c, v)
            ramsey_domination_witness(arr, c)
            violations += not g.is_dominating(c)
    regions = 0
    while regions < 50:
        n = rng.randint(2, 12)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < rng.choice((0.2, 0.4, 0.6))])
        s = sum(1 << v for v in range(n) if rng.random() < 0.6)
        if not s:
            continue
        regions += 1
        state = matching_init(g, s)
        cover = (state.covered & s).bit_count()
        for _ in range(10_000):
            v = rng.choice(bits(state.guarded))
            matched = state.covered >> v & 1
            before = state.guarded
            state = matching_defend(state, g, v)
            if matched and state.guarded == before:
                violations += 1  # a matched guard must always slide
            violations += bool(state.check(g, cover))
    ok = violations == 0 and time.monotonic() - t0 < 300
    record(12, "Ramsey array (2 x 10^4 attacks) and matching invariant (50 regions x 10^4 attacks)", ok, t0,
           f"violations={violations}")
    assert ok


def test_criterion_13_bounds_arithmetic():
    t0 = time.monotonic()
    chain = bounds.l_chain(2)
    values = tuple(iv.lo for iv in chain)
    exact = all(iv.exact for iv in chain)
    t1 = time.monotonic()
    r33 = bounds.ramsey_brute_force(3, 3)
    brute_time = time.monotonic() - t1
    ok = (values == (3, 6, 18) and exact and bounds.c_bound(2).lo == 18
          and bounds.f_bound(1) == 1 and bounds.f_bound(2, 18) == 72 and r33 == 6 and brute_time < 10)
    record(13, "l_chain(2)=(3,6,18), f(1)=1, f(2,18)=72, r(3,3)=6 by exhaustive search", ok, t0,
           f"chain={values}, r(3,3)={r33} in {brute_time:.1f}s")
    assert ok


def test_criterion_14_reported_not_asserted():
    # large-k bounds and the open questions are only reported
    t0 = time.monotonic()
    f4 = bounds.f_alpha(4)
    summary = list(hunt(builtin_stream(5), parse_predicate("alpha3-eviction5")))[-1]["summary"]
    ok = not f4.exact and summary["timeouts"] == 0
    record(14, "f(k), k >= 4, reported as an interval; hunt reports without asserting existence", ok, t0,
           f"f(4) in {f4}, hunt findings={summary['findings']}")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
