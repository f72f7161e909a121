"""Constructive defender strategies driven by structural certificates.

* Ramsey array: k+1 disjoint maximum independent sets R_1..R_{k+1} arranged so
  that column j (the j-th vertex of every row) is a clique.  k guards per column
  always leave some row fully occupied, so k^2 guards dominate forever and an
  attacked guard always has a free vertex in its own column.
* Matching maintenance: one guard per edge of a matching M that covers as many
  target vertices as possible, plus a guard on every uncovered target vertex.
* Peeling: repeatedly delete a smallest vertex set lowering alpha by one, until
  the residual graph has many disjoint maximum independent sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Optional, Union

from .graph import CapacityError, Graph, bits, mask_of
from .invariants import (
    Matching,
    constrained_matching,
    independence_number,
    is_matching,
    matched_vertices,
    max_disjoint_max_independent_sets,
    maximum_independent_sets,
)

PEEL_CAP = 14


class StrategyContractError(ValueError):
    """A strategy was called outside its precondition."""


class StrategyInvariantError(RuntimeError):
    """A guarantee of a strategy failed; indicates a bug or a broken certificate."""


# ---------------------------------------------------------------- Ramsey array


@dataclass(frozen=True)
class RamseyArray:
    k: int
    cells: tuple[tuple[int, ...], ...]  # (k+1) rows x k columns of vertex indices

    @property
    def rows(self) -> list[int]:
        return [mask_of(r) for r in self.cells]

    @property
    def columns(self) -> list[int]:
        return [mask_of(r[j] for r in self.cells) for j in range(self.k)]

    @property
    def support(self) -> int:
        return mask_of(v for r in self.cells for v in r)

    def column_of(self, v: int) -> int:
        for r in self.cells:
            if v in r:
                return r.index(v)
        raise StrategyContractError(f"vertex {v} is not in the array")

    def check(self, g: Graph) -> list[str]:
        problems = []
        flat = [v for r in self.cells for v in r]
        if len(self.cells) != self.k + 1 or any(len(r) != self.k for r in self.cells):
            problems.append("array is not (k+1) x k")
        if len(set(flat)) != len(flat):
            problems.append("cells are not distinct")
        for i, row in enumerate(self.rows):
            if not g.is_independent(row):
                problems.append(f"row {i} is not independent")
        for j, col in enumerate(self.columns):
            if not g.is_clique(col):
                problems.append(f"column {j} is not a clique")
        return problems

    def initial_configuration(self) -> int:
        """Rows 0..k-1 fully occupied: k guards in every column."""
        return mask_of(v for r in self.cells[: self.k] for v in r)

    def to_json(self) -> dict:
        return {"k": self.k, "cells": [list(r) for r in self.cells]}


def find_ramsey_array(g: Graph) -> Optional[RamseyArray]:
    """Search ``g`` directly for a (k+1) x k array with independent rows and clique columns, k = alpha."""
    k, _ = independence_number(g)
    if (k + 1) * k > g.n:
        return None
    adj = g.adj

    for first in sorted(maximum_independent_sets(g, k)):
        row0 = tuple(bits(first))
        columns = [1 << v for v in row0]
        rows = [row0]

        def fill_row(col: int, used: int, row: list[int], row_mask: int) -> bool:
            if col == k:
                rows.append(tuple(row))
                if extend(used):
                    return True
                rows.pop()
                return False
            cand = ~used & g.full & ~row_mask
            for v in bits(row_mask):
                cand &= ~adj[v]
            # v must be adjacent to everything already in its column
            for u in bits(columns[col]):
                cand &= adj[u]
            if col == 0 and len(rows) > 1:
                # rows after the first are ordered by their column-0 vertex
                cand &= ~((1 << (rows[-1][0] + 1)) - 1)
            for v in bits(cand):
                columns[col] |= 1 << v
                row.append(v)
                if fill_row(col + 1, used | 1 << v, row, row_mask | 1 << v):
                    return True
                row.pop()
                columns[col] &= ~(1 << v)
            return False

        def extend(used: int) -> bool:
            if len(rows) == k + 1:
                return True
            return fill_row(0, used, [], 0)

        if extend(first):
            return RamseyArray(k, tuple(rows))
    return None


def _column_counts(arr: RamseyArray, c: int) -> list[int]:
    return [(c & col).bit_count() for col in arr.columns]


def ramsey_defend(arr: RamseyArray, c: int, attack: int) -> int:
    """Move the attacked guard to the one unoccupied cell of its column."""
    if not c >> attack & 1:
        raise StrategyContractError(f"vertex {attack} carries no guard")
    if not arr.support >> attack & 1:
        raise StrategyContractError(f"vertex {attack} is not in the array")
    if any(x != arr.k for x in _column_counts(arr, c)):
        raise StrategyContractError("configuration does not hold exactly k guards in every column")
    col = arr.columns[arr.column_of(attack)]
    free = col & ~c
    if free.bit_count() != 1:
        raise StrategyInvariantError("column should have exactly one unoccupied cell")
    return c & ~(1 << attack) | free


def ramsey_domination_witness(arr: RamseyArray, c: int) -> int:
    """Index of a fully occupied row; one exists whenever each column holds k guards."""
    for m, row in enumerate(arr.rows):
        if row & c == row:
            return m
    raise StrategyInvariantError("no fully occupied row: pigeonhole guarantee violated")


# ---------------------------------------------------------------- matching strategy


@dataclass(frozen=True)
class MatchingState:
    matching: Matching
    guarded: int
    region: int  # target set plus the partners the matching pulled in
    target: int

    @property
    def covered(self) -> int:
        return matched_vertices(self.matching)

    @property
    def uncovered_guards(self) -> int:
        return self.region & ~self.covered

    def check(self, g: Graph, target_coverage: Optional[int] = None) -> list[str]:
        problems = []
        if not is_matching(self.matching):
            problems.append("M is not a matching")
        for u, v in self.matching:
            if not g.has_edge(u, v):
                problems.append(f"({u}, {v}) is not an edge")
            if (self.guarded >> u & 1) + (self.guarded >> v & 1) != 1:
                problems.append(f"edge ({u}, {v}) does not carry exactly one guard")
        if self.uncovered_guards & ~self.guarded:
            problems.append(f"uncovered vertices {bits(self.uncovered_guards & ~self.guarded)} lack guards")
        if self.guarded & ~self.region:
            problems.append("a guard left the region")
        if self.covered & ~self.region:
            problems.append("the matching left the region")
        if self.uncovered_guards & ~self.target:
            problems.append("an uncovered vertex lies outside the target set")
        if target_coverage is not None and (self.covered & self.target).bit_count() != target_coverage:
            problems.append("matching no longer covers the maximum number of target vertices")
        return problems

    def to_json(self) -> dict:
        return {
            "matching": [list(e) for e in self.matching],
            "guarded": bits(self.guarded),
            "uncovered_guards": bits(self.uncovered_guards),
            "region": bits(self.region),
            "target": bits(self.target),
        }


def matching_init(g: Graph, s: int) -> MatchingState:
    m = constrained_matching(g, s)
    guards = 0
    for u, v in m:
        if s >> u & 1 and not s >> v & 1:
            guards |= 1 << u
        elif s >> v & 1 and not s >> u & 1:
            guards |= 1 << v
        else:
            guards |= 1 << min(u, v)
    covered = matched_vertices(m)
    guards |= s & ~covered
    return MatchingState(m, guards, s | covered, s)


def matching_defend(state: MatchingState, g: Graph, attack: int, occupied_elsewhere: int = 0) -> MatchingState:
    if not state.guarded >> attack & 1:
        raise StrategyContractError(f"vertex {attack} carries no guard of this region")
    for u, v in state.matching:
        if attack in (u, v):
            partner = v if attack == u else u
            return MatchingState(state.matching, state.guarded & ~(1 << attack) | 1 << partner, state.region, state.target)
    occupied = state.guarded | occupied_elsewhere
    free = g.adj[attack] & ~occupied
    if not free:
        return state
    x = (free & -free).bit_length() - 1
    edge = next((e for e in state.matching if x in e), None)
    if edge is None:
        raise StrategyInvariantError(
            f"unoccupied neighbour {x} of uncovered {attack} is unmatched: matching was not maximum on the target"
        )
    y = edge[0] if edge[1] == x else edge[1]
    if not state.target >> y & 1:
        raise StrategyInvariantError(f"swap would uncover {y}, which is outside the target set")
    new_m = tuple(sorted([e for e in state.matching if e != edge] + [tuple(sorted((attack, x)))]))
    return MatchingState(new_m, state.guarded & ~(1 << attack) | 1 << x, state.region, state.target)


# ---------------------------------------------------------------- peeling


def min_alpha_reducing_set(g: Graph, mask: int) -> int:
    """A smallest subset S of ``mask`` with alpha(G[mask] - S) = alpha(G[mask]) - 1.

    S works exactly when it meets every maximum independent set, so this is a
    minimum hitting set, searched by increasing size in lexicographic order.
    """
    sub, keep = g.induced(mask)
    family = list(maximum_independent_sets(sub))
    support = 0
    for s in family:
        support |= s
    verts = bits(support)
    for size in range(1, len(verts) + 1):
        for combo in combinations(verts, size):
            hit = mask_of(combo)
            if all(s & hit for s in family):
                return mask_of(keep[i] for i in combo)
    raise AssertionError("unreachable: the union of all maximum independent sets hits them all")


def _alpha_of(g: Graph, mask: int) -> int:
    return independence_number(g.induced(mask)[0])[0] if mask else 0


def _disjoint_count(g: Graph, mask: int) -> tuple[int, list[int]]:
    sub, keep = g.induced(mask)
    sets = max_disjoint_max_independent_sets(sub)
    return len(sets), [mask_of(keep[i] for i in bits(s)) for s in sets]


Threshold = Union[int, Callable[[int], int]]


def _threshold(threshold: Optional[Threshold], level: int) -> int:
    if threshold is None:
        return level + 1
    if callable(threshold):
        return threshold(level)
    return threshold


@dataclass
class PeelingResult:
    initial_alpha: int
    initial_disjoint: int
    removed: list[int]
    residual: int
    level: int
    stopped: bool
    disjoint_count: int
    disjoint_sets: list[int]
    thresholds: list[int] = field(default_factory=list)
    cascade: list[tuple[int, int, bool]] = field(default_factory=list)  # (|S_i|, cap, holds)

    @property
    def removed_union(self) -> int:
        out = 0
        for s in self.removed:
            out |= s
        return out

    @property
    def first_set_bound_ok(self) -> bool:
        """|S_0| is below k times (number of disjoint maximum independent sets + 1)."""
        if not self.removed:
            return True
        return self.removed[0].bit_count() < self.initial_alpha * (self.initial_disjoint + 1)

    def to_json(self) -> dict:
        return {
            "initial_alpha": self.initial_alpha,
            "initial_disjoint": self.initial_disjoint,
            "removed": [bits(s) for s in self.removed],
            "residual": bits(self.residual),
            "level": self.level,
            "stopped": self.stopped,
            "disjoint_count": self.disjoint_count,
            "cascade": [list(c) for c in self.cascade],
        }


def peel(g: Graph, threshold: Optional[Threshold] = None) -> PeelingResult:
    """Peel alpha down one level at a time until the residual graph has enough disjoint maximum independent sets.

    At level l the stop rule asks for at least ``threshold(l) + |S|`` disjoint
    maximum independent sets in the residual, S being everything removed so
    far.  The default threshold is l + 1, the smallest count for which an
    l-level Ramsey array can exist.
    """
    if g.n > PEEL_CAP:
        raise CapacityError(f"peeling limited to {PEEL_CAP} vertices, got {g.n}")
    k, _ = independence_number(g)
    if k < 2:
        raise ValueError("peeling needs independence number at least 2")
    count0, sets0 = _disjoint_count(g, g.full)
    result = PeelingResult(k, count0, [], g.full, k, False, count0, sets0)
    thr = _threshold(threshold, k)
    result.thresholds.append(thr)
    if count0 >= thr:
        result.stopped = True
        return result

    mask, total = g.full, 0
    for i in range(k - 1):
        level = k - i
        cap = level * (_threshold(threshold, level) + total)
        s = min_alpha_reducing_set(g, mask)
        result.cascade.append((s.bit_count(), cap, s.bit_count() < cap))
        result.removed.append(s)
        mask &= ~s
        total += s.bit_count()
        new_level = level - 1
        if _alpha_of(g, mask) != new_level:
            raise StrategyInvariantError("peeling step did not lower alpha by exactly one")
        cnt, sets = _disjoint_count(g, mask)
        thr = _threshold(threshold, new_level)
        result.thresholds.append(thr)
        result.residual, result.level, result.disjoint_count, result.disjoint_sets = mask, new_level, cnt, sets
        if cnt >= thr + total:
            result.stopped = True
            break
    return result


# ---------------------------------------------------------------- composite


@dataclass
class CompositeDefense:
    """Ramsey-array defence on the residual core plus matching defence on the peeled region.

    Stateful: the matching changes under Case-2 swaps, so one instance follows
    one play.  Moves that leave their region are logged in ``findings``.
    """

    graph: Graph
    array: Optional[RamseyArray]
    matching: Optional[MatchingState]
    peeling: Optional[PeelingResult]
    findings: list[str] = field(default_factory=list)

    @property
    def array_region(self) -> int:
        return self.array.support if self.array else 0

    @property
    def matching_region(self) -> int:
        return self.matching.region if self.matching else 0

    def start(self) -> int:
        c = self.array.initial_configuration() if self.array else 0
        if self.matching:
            c |= self.matching.guarded
        return c

    @property
    def guards(self) -> int:
        return self.start().bit_count()

    def respond(self, c: int, attack: int) -> int:
        if self.array_region >> attack & 1:
            part = c & self.array_region
            moved = ramsey_defend(self.array, part, attack)
            dest = moved & ~part
            if dest & ~self.array_region:
                self.findings.append(f"array guard left its region: {attack} -> {bits(dest)}")
            return c & ~part | moved
        if self.matching and self.matching.guarded >> attack & 1:
            elsewhere = c & ~self.matching.guarded
            new = matching_defend(self.matching, self.graph, attack, elsewhere)
            if new.guarded & ~self.matching.region:
                self.findings.append(f"matching guard left its region from {attack}")
            self.matching = new
            return c & ~(1 << attack) | new.guarded
        raise StrategyContractError(f"vertex {attack} carries no guard of the composite defence")

    def __call__(self, c: int, attack: int) -> int:
        return self.respond(c, attack)


def composite_defense(g: Graph, threshold: Optional[Threshold] = None) -> Optional[CompositeDefense]:
    """Combine peeling, matching maintenance and a Ramsey array, or ``None`` if the pieces do not fit."""
    alpha, _ = independence_number(g)
    if alpha == 1:
        arr = find_ramsey_array(g)
        return CompositeDefense(g, arr, None, None) if arr else None
    try:
        pr = peel(g, threshold)
    except CapacityError:
        return None
    if not pr.stopped:
        return None
    s = pr.removed_union
    try:
        state = matching_init(g, s) if s else None
    except CapacityError:
        return None
    region = state.region if state else 0
    core = g.full & ~region
    if not core:
        return None
    sub, keep = g.induced(core)
    if independence_number(sub)[0] != pr.level:
        return None
    arr = find_ramsey_array(sub)
    if arr is None:
        return None
    mapped = RamseyArray(arr.k, tuple(tuple(keep[v] for v in row) for row in arr.cells))
    return CompositeDefense(g, mapped, state, pr)


def random_attacks(seed: int) -> Callable[[int], int]:
    rng = random.Random(seed)
    return lambda c: rng.choice(bits(c))
