import json
import random
from itertools import combinations

import pytest

from evictlab import families
from evictlab.graph import CapacityError, Graph, bits, mask_of
from evictlab.invariants import constrained_matching, independence_number, matched_vertices
from evictlab.strategies import (
    MatchingState,
    RamseyArray,
    StrategyContractError,
    composite_defense,
    find_ramsey_array,
    matching_defend,
    matching_init,
    min_alpha_reducing_set,
    peel,
    ramsey_defend,
    ramsey_domination_witness,
    random_attacks,
)
import oracles


def clique_copies(k):
    return families.copies(k, families.complete(k + 1))


def fixture_two_k5_with_tail():
    # 2K5 with a pendant edge 10-11 hanging off vertex 0
    g = families.copies(2, families.complete(5))
    edges = g.edges() + [(10, 0), (11, 10)]
    return Graph.from_edges(12, edges)


# ---------------------------------------------------------------- Ramsey array


@pytest.mark.parametrize("k", [1, 2, 3])
def test_array_on_clique_copies(k):
    g = clique_copies(k)
    arr = find_ramsey_array(g)
    assert arr is not None and arr.k == k
    assert arr.check(g) == []
    # columns are exactly the clique copies
    copies = {mask_of(range(i * (k + 1), (i + 1) * (k + 1))) for i in range(k)}
    assert set(arr.columns) == copies


def test_no_array_for_c7_or_k1():
    assert find_ramsey_array(families.cycle(7)) is None
    assert find_ramsey_array(families.complete(1)) is None


def test_array_checker_catches_bad_arrays():
    g = clique_copies(2)
    bad = RamseyArray(2, ((0, 1), (3, 4), (2, 5)))
    assert bad.check(g)
    assert RamseyArray(2, ((0, 0), (1, 4), (2, 5))).check(g)


def test_defend_moves_within_column_to_empty_cell():
    g = clique_copies(3)
    arr = find_ramsey_array(g)
    c = arr.initial_configuration()
    rng = random.Random(0)
    for _ in range(500):
        v = rng.choice(bits(c))
        c2 = ramsey_defend(arr, c, v)
        (dest,) = bits(c2 & ~c)
        assert not c >> dest & 1
        assert arr.column_of(dest) == arr.column_of(v)
        assert all((c2 & col).bit_count() == 3 for col in arr.columns)
        m = ramsey_domination_witness(arr, c2)
        assert arr.rows[m] & ~c2 == 0
        c = c2


def test_two_attacks_in_a_column_permute_it():
    arr = find_ramsey_array(clique_copies(2))
    c = arr.initial_configuration()
    v = arr.cells[0][0]
    c1 = ramsey_defend(arr, c, v)
    (w,) = bits(c1 & ~c)
    c2 = ramsey_defend(arr, c1, w)
    assert c2 == c


def test_witness_on_fresh_placement():
    arr = find_ramsey_array(clique_copies(3))
    assert ramsey_domination_witness(arr, arr.initial_configuration()) in range(3)
    one = find_ramsey_array(clique_copies(1))
    assert ramsey_domination_witness(one, one.initial_configuration()) == 0


def test_defend_contract_errors():
    arr = find_ramsey_array(clique_copies(2))
    c = arr.initial_configuration()
    empty = bits(arr.support & ~c)[0]
    with pytest.raises(StrategyContractError):
        ramsey_defend(arr, c, empty)
    with pytest.raises(StrategyContractError):
        ramsey_defend(arr, c | 1 << empty, bits(c)[0])
    with pytest.raises(StrategyContractError):
        ramsey_defend(arr, c, 99)


def test_array_json():
    arr = find_ramsey_array(clique_copies(2))
    assert json.loads(json.dumps(arr.to_json()))["k"] == 2


# ---------------------------------------------------------------- matching strategy


def test_matching_init_examples():
    edge = families.complete(2)
    st = matching_init(edge, edge.full)
    assert st.guarded.bit_count() == 1
    star = families.star(3)
    st = matching_init(star, star.full)
    assert len(st.matching) == 1 and st.guarded.bit_count() == 3
    assert st.check(star) == []


def test_matching_guard_prefers_target_endpoint():
    p2 = families.path(2)
    st = matching_init(p2, 1 << 1)
    assert st.guarded == 1 << 1


def test_covered_attack_slides_along_edge():
    g = families.path(2)
    st = matching_init(g, g.full)
    u = bits(st.guarded)[0]
    st2 = matching_defend(st, g, u)
    assert st2.matching == st.matching
    assert st2.guarded == g.full & ~st.guarded


def test_case_two_swaps_matching_edge():
    # z=0, x=1, y=2 on a path; M = {xy}, guards on z and y
    g = families.path(3)
    st = MatchingState(((1, 2),), mask_of([0, 2]), g.full, g.full)
    assert st.check(g) == []
    st2 = matching_defend(st, g, 0)
    assert st2.matching == ((0, 1),)
    assert st2.guarded == mask_of([1, 2])
    assert st2.check(g) == []


def test_case_one_surrounded_uncovered_guard_stays():
    g = families.path(3)
    st = MatchingState(((1, 2),), mask_of([0, 1]), g.full, g.full)
    assert matching_defend(st, g, 0, occupied_elsewhere=0) == st


def test_matching_defend_rejects_unguarded_attack():
    g = families.path(3)
    st = matching_init(g, g.full)
    with pytest.raises(StrategyContractError):
        matching_defend(st, g, bits(g.full & ~st.guarded)[0])


def test_matching_invariant_under_random_play():
    rng = random.Random(11)
    for _ in range(20):
        n = rng.randint(3, 12)
        g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.3])
        s = sum(1 << v for v in range(n) if rng.random() < 0.6) or 1
        st = matching_init(g, s)
        cover = (st.covered & s).bit_count()
        assert cover == oracles.max_coverage(n, g.edges(), bits(s)) if g.m <= 14 else True
        guards = st.guarded.bit_count()
        assert guards == len(st.matching) + st.uncovered_guards.bit_count()
        for _ in range(300):
            st = matching_defend(st, g, rng.choice(bits(st.guarded)))
            assert st.check(g, cover) == []
            assert st.guarded.bit_count() == guards


# ---------------------------------------------------------------- peeling


def brute_min_reducing_size(g, mask):
    sub, _ = g.induced(mask)
    a = oracles.alpha(sub.n, sub.edges())
    for size in range(1, sub.n + 1):
        for combo in combinations(range(sub.n), size):
            rest = [v for v in range(sub.n) if v not in combo]
            h, _ = sub.induced(mask_of(rest))
            if oracles.alpha(h.n, h.edges()) == a - 1:
                return size


def test_two_k2_needs_two_vertices():
    g = families.copies(2, families.complete(2))
    s = min_alpha_reducing_set(g, g.full)
    assert s.bit_count() == 2
    assert brute_min_reducing_size(g, g.full) == 2


def test_peel_rejects_cliques_and_large_graphs():
    with pytest.raises(ValueError):
        peel(families.complete(5))
    with pytest.raises(CapacityError):
        peel(families.cycle(15))


def test_peel_c7_each_step_minimum():
    g = families.cycle(7)
    r = peel(g)
    assert [bits(s) for s in r.removed] == [[0, 1, 2], [3, 4]]
    assert r.level == 1 and not r.stopped
    mask = g.full
    for s in r.removed:
        assert s.bit_count() == brute_min_reducing_size(g, mask)
        mask &= ~s
    assert all(holds for _, _, holds in r.cascade)
    assert r.first_set_bound_ok


@pytest.mark.parametrize("seed", range(6))
def test_peel_random_minimality_and_alpha_drop(seed):
    rng = random.Random(seed)
    n = rng.randint(5, 9)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < 0.4])
    if independence_number(g)[0] < 2:
        return
    r = peel(g)
    mask, a = g.full, r.initial_alpha
    for s in r.removed:
        assert s.bit_count() == brute_min_reducing_size(g, mask)
        mask &= ~s
        a -= 1
        assert independence_number(g.induced(mask)[0])[0] == a


def test_peel_stops_when_enough_disjoint_sets():
    g = fixture_two_k5_with_tail()
    r = peel(g)
    assert r.stopped and r.level == 2
    assert bits(r.removed_union) == [10, 11]
    assert r.disjoint_count >= 3 + 2


def test_peel_stops_immediately_on_clique_copies():
    r = peel(clique_copies(2))
    assert r.stopped and r.removed == []


# ---------------------------------------------------------------- composite


def test_composite_on_fixture_keeps_domination():
    g = fixture_two_k5_with_tail()
    comp = composite_defense(g)
    assert comp is not None
    assert comp.array.k == 2 and comp.matching.matching == ((10, 11),)
    assert comp.guards == 5
    c = comp.start()
    attack = random_attacks(5)
    for _ in range(10_000):
        v = attack(c)
        c2 = comp(c, v)
        assert c2.bit_count() == 5
        assert g.is_dominating(c2)
        if g.adj[v] & ~c:
            assert c2 != c
        c = c2
    assert comp.findings == []


def test_composite_without_peeled_region_is_array_only():
    comp = composite_defense(clique_copies(2))
    assert comp is not None and comp.matching is None
    assert comp.start() == comp.array.initial_configuration()
    comp1 = composite_defense(families.complete(3))
    assert comp1 is not None and comp1.matching is None


def test_composite_absent_when_nothing_fits():
    assert composite_defense(families.cycle(7)) is None
    assert composite_defense(families.complete(1)) is None
