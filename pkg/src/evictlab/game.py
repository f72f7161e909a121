"""Exact solvers for the eviction game and the classical eternal domination game.

A configuration is a bitmask of occupied vertices (one guard per vertex).  Both
games are solved as a greatest fixed point over the dominating k-sets: a
configuration survives while every attack on it has at least one legal reply
that is itself surviving.

Eviction: the attacker picks an occupied vertex v.  If an unoccupied neighbour
exists the guard must move to one of them (defender's choice); otherwise v is
surrounded and nothing changes.  Because every neighbour of a surrounded,
non-isolated v is occupied, removing v's guard for one time unit leaves a
dominating set, so modelling the surrounded attack as a self-loop does not
change who wins (checked at runtime by :func:`eviction_safe_set`).

Eternal domination: the attacker picks an unoccupied vertex w and a guard from
a neighbour of w must move onto it.
"""

from __future__ import annotations

import json
import random
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Iterable, Iterator, Optional, Sequence, Union

from .graph import Graph, bits, mask_of
from .invariants import clique_cover_number, domination_number, independence_number

EVICTION = "eviction"
ETERNAL = "eternal"


class SolverTimeout(RuntimeError):
    pass


class SolverInvariantError(RuntimeError):
    """A proven property of the game failed to hold; indicates a solver bug."""


class NoStrategyError(ValueError):
    pass


class CertificateMisuseError(ValueError):
    pass


# ---------------------------------------------------------------- move rules


def eviction_attacks(g: Graph, d: int) -> list[int]:
    """Occupied vertices whose guard has an unoccupied neighbour (surrounded ones are self-loops)."""
    return [v for v in bits(d) if g.adj[v] & ~d]


def eviction_replies(g: Graph, d: int, v: int) -> list[tuple[int, int]]:
    """``(destination, new_config)`` for every legal eviction of the guard on ``v``."""
    base = d & ~(1 << v)
    return [(w, base | 1 << w) for w in bits(g.adj[v] & ~d)]


def eternal_attacks(g: Graph, d: int) -> list[int]:
    return bits(g.full & ~d)


def eternal_replies(g: Graph, d: int, w: int) -> list[tuple[int, int]]:
    """``(source, new_config)`` for every guard that may answer an attack on ``w``."""
    top = d | 1 << w
    return [(v, top & ~(1 << v)) for v in bits(g.adj[w] & d)]


def _predecessors(g: Graph, d2: int, game: str) -> Iterator[tuple[int, int]]:
    """Every ``(d, attack)`` with ``d2`` among the replies to ``attack`` at ``d``."""
    # a move takes a guard from v (not in d2) to its neighbour w (in d2)
    for w in bits(d2):
        base = d2 & ~(1 << w)
        for v in bits(g.adj[w] & ~d2):
            yield base | 1 << v, (v if game == EVICTION else w)


_RULES = {
    EVICTION: (eviction_attacks, eviction_replies),
    ETERNAL: (eternal_attacks, eternal_replies),
}


def enumerate_dominating_sets(g: Graph, k: int) -> list[int]:
    """All dominating k-subsets in lexicographic order of their sorted vertex lists."""
    if not 1 <= k <= g.n:
        raise ValueError(f"k must lie in 1..{g.n}")
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    full = g.full
    out = []
    for combo in combinations(range(g.n), k):
        dom = 0
        for v in combo:
            dom |= closed[v]
        if dom == full:
            out.append(mask_of(combo))
    return out


def config_key(d: int) -> list[int]:
    return bits(d)


# ---------------------------------------------------------------- fixed points


@dataclass
class FixedPoint:
    """Result of a retrograde solve: survivors plus the attacker's plan for the rest.

    ``depth[d]`` bounds the number of attacks needed to force a non-dominating
    configuration from ``d``; ``attack[d]`` is the attack achieving it.
    """

    graph: Graph
    k: int
    game: str
    dominating: list[int]
    safe: frozenset[int]
    attack: dict[int, int] = field(default_factory=dict)
    depth: dict[int, int] = field(default_factory=dict)


def _check_deadline(deadline: Optional[float]) -> None:
    if deadline is not None and time.monotonic() > deadline:
        raise SolverTimeout("solver deadline exceeded")


def solve_worklist(g: Graph, k: int, game: str = EVICTION, deadline: Optional[float] = None) -> FixedPoint:
    """Greatest fixed point by counter-based retrograde propagation.

    For each live (configuration, attack) pair we count the replies that are
    still alive; a configuration dies when one of its counters reaches zero.
    """
    attacks_of, replies_of = _RULES[game]
    doms = enumerate_dominating_sets(g, k)
    alive = set(doms)
    counts: dict[tuple[int, int], int] = {}
    attack: dict[int, int] = {}
    depth: dict[int, int] = {}
    queue: deque[int] = deque()

    for i, d in enumerate(doms):
        if i & 1023 == 0:
            _check_deadline(deadline)
        for a in attacks_of(g, d):
            c = sum(1 for _, d2 in replies_of(g, d, a) if d2 in alive)
            if c == 0:
                attack[d], depth[d] = a, 1
                queue.append(d)
                break
            counts[(d, a)] = c
    for d in queue:
        alive.discard(d)

    steps = 0
    while queue:
        steps += 1
        if steps & 1023 == 0:
            _check_deadline(deadline)
        dead = queue.popleft()
        for d, a in _predecessors(g, dead, game):
            if d not in alive:
                continue
            key = (d, a)
            if key not in counts:
                continue
            counts[key] -= 1
            if counts[key] == 0:
                alive.discard(d)
                attack[d], depth[d] = a, depth[dead] + 1
                queue.append(d)

    return FixedPoint(g, k, game, doms, frozenset(alive), attack, depth)


def solve_naive(g: Graph, k: int, game: str = EVICTION) -> frozenset[int]:
    """Greatest fixed point by synchronous rounds of deletion until nothing changes.

    Kept deliberately simple; this is the reference the worklist solver is tested against.
    """
    attacks_of, replies_of = _RULES[game]
    current = set(enumerate_dominating_sets(g, k))
    while True:
        kept = {
            d
            for d in current
            if all(any(d2 in current for _, d2 in replies_of(g, d, a)) for a in attacks_of(g, d))
        }
        if kept == current:
            return frozenset(kept)
        current = kept


# ---------------------------------------------------------------- safe sets


@dataclass(frozen=True)
class SafeSet:
    graph: Graph
    k: int
    game: str
    members: frozenset[int]

    def __bool__(self) -> bool:
        return bool(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, d: int) -> bool:
        return d in self.members

    def sorted_members(self) -> list[int]:
        return sorted(self.members, key=bits)

    def to_json(self) -> dict:
        return {
            "game": self.game,
            "k": self.k,
            "n": self.graph.n,
            "configurations": [bits(d) for d in self.sorted_members()],
        }


def _check_surrounded_noop(g: Graph, members: Iterable[int]) -> None:
    for d in members:
        for v in bits(d):
            closed = g.adj[v] | 1 << v
            if closed & ~d or not g.adj[v]:
                continue
            if not g.is_dominating(d & ~(1 << v)):
                raise SolverInvariantError(
                    f"surrounded guard at {v} in {bits(d)} leaves a non-dominating set when idle"
                )


def eviction_safe_set(g: Graph, k: int, deadline: Optional[float] = None) -> SafeSet:
    fp = solve_worklist(g, k, EVICTION, deadline)
    _check_surrounded_noop(g, fp.safe)
    return SafeSet(g, k, EVICTION, fp.safe)


def eternal_domination_safe_set(g: Graph, k: int, deadline: Optional[float] = None) -> SafeSet:
    return SafeSet(g, k, ETERNAL, solve_worklist(g, k, ETERNAL, deadline).safe)


def eviction_number(g: Graph, deadline: Optional[float] = None) -> int:
    """Least k for which some dominating k-set is eternally defensible in the eviction game."""
    gamma = domination_number(g)[0]
    for k in range(gamma, g.n + 1):
        if eviction_safe_set(g, k, deadline):
            break
    theta = clique_cover_number(g)[0]
    if not gamma <= k <= theta:
        raise SolverInvariantError(f"eviction number {k} outside [gamma={gamma}, theta={theta}]")
    return k


def eternal_domination_number(g: Graph, deadline: Optional[float] = None) -> int:
    gamma = domination_number(g)[0]
    for k in range(gamma, g.n + 1):
        if eternal_domination_safe_set(g, k, deadline):
            break
    alpha = independence_number(g)[0]
    if not alpha <= k <= comb(alpha + 1, 2):
        raise SolverInvariantError(f"eternal domination number {k} outside [alpha, C(alpha+1, 2)] for alpha={alpha}")
    return k


# ---------------------------------------------------------------- strategies


@dataclass(frozen=True)
class StrategyFamily:
    """An eternal dominating family with a fixed reply for every (configuration, attack)."""

    graph: Graph
    k: int
    game: str
    family: tuple[int, ...]
    moves: dict[tuple[int, int], int]

    def respond(self, d: int, attack: int) -> Optional[int]:
        if self.game == EVICTION and d >> attack & 1 and not self.graph.adj[attack] & ~d:
            return d
        return self.moves.get((d, attack))

    def __call__(self, d: int, attack: int) -> Optional[int]:
        return self.respond(d, attack)

    def to_json(self) -> dict:
        return {
            "game": self.game,
            "k": self.k,
            "n": self.graph.n,
            "family": [bits(d) for d in self.family],
            "moves": [[bits(d), a, bits(d2)] for (d, a), d2 in sorted(self.moves.items(), key=lambda kv: (bits(kv[0][0]), kv[0][1]))],
        }


def _extract(g: Graph, safe: SafeSet, start: Optional[int]) -> StrategyFamily:
    attacks_of, replies_of = _RULES[safe.game]
    if not safe:
        raise NoStrategyError(f"{safe.k} guards cannot defend {g.name or 'the graph'} in the {safe.game} game")

    def choose(d: int, a: int) -> int:
        # replies come out in increasing vertex order, so the first survivor is lowest-index
        for _, d2 in replies_of(g, d, a):
            if d2 in safe.members:
                return d2
        raise SolverInvariantError(f"safe configuration {bits(d)} has no surviving reply to {a}")

    moves: dict[tuple[int, int], int] = {}
    if start is None:
        family = safe.sorted_members()
        for d in family:
            for a in attacks_of(g, d):
                moves[(d, a)] = choose(d, a)
    else:
        if start not in safe.members:
            raise NoStrategyError(f"start configuration {bits(start)} is not in the safe set")
        seen = {start}
        todo = [start]
        while todo:
            d = todo.pop()
            for a in attacks_of(g, d):
                d2 = moves[(d, a)] = choose(d, a)
                if d2 not in seen:
                    seen.add(d2)
                    todo.append(d2)
        family = sorted(seen, key=bits)
    if safe.game == EVICTION:
        for d in family:
            for v in bits(d):
                if not g.adj[v] & ~d:
                    moves[(d, v)] = d
    return StrategyFamily(g, safe.k, safe.game, tuple(family), moves)


def extract_eviction_family(g: Graph, k: int, start: Optional[int] = None) -> StrategyFamily:
    return _extract(g, eviction_safe_set(g, k), start)


def extract_eternal_family(g: Graph, k: int, start: Optional[int] = None) -> StrategyFamily:
    return _extract(g, eternal_domination_safe_set(g, k), start)


def verify_eviction_family(g: Graph, family: Iterable[int]) -> list[str]:
    """Check the definition of an eviction eternal dominating family; returns problems found."""
    fam = set(family)
    problems = []
    if len({d.bit_count() for d in fam}) > 1:
        problems.append("configurations differ in size")
    for d in fam:
        if not g.is_dominating(d):
            problems.append(f"{bits(d)} is not dominating")
        for v in bits(d):
            closed = g.adj[v] | 1 << v
            if closed & ~d == 0:
                continue
            if not any(d2 in fam for _, d2 in eviction_replies(g, d, v)):
                problems.append(f"{bits(d)}: guard on {v} has no reply inside the family")
    return problems


def verify_eternal_family(g: Graph, family: Iterable[int]) -> list[str]:
    fam = set(family)
    problems = []
    if len({d.bit_count() for d in fam}) > 1:
        problems.append("configurations differ in size")
    for d in fam:
        for w in eternal_attacks(g, d):
            if not any(d2 in fam and d2 != d for _, d2 in eternal_replies(g, d, w)):
                problems.append(f"{bits(d)}: attack on {w} has no reply inside the family")
    return problems


def verify_strategy(strategy: StrategyFamily) -> list[str]:
    """Family check plus legality and closure of every recorded move."""
    g = strategy.graph
    fam = set(strategy.family)
    if strategy.game == EVICTION:
        problems = verify_eviction_family(g, fam)
    else:
        problems = verify_eternal_family(g, fam)
    attacks_of, replies_of = _RULES[strategy.game]
    for d in fam:
        for a in attacks_of(g, d):
            d2 = strategy.moves.get((d, a))
            if d2 is None:
                problems.append(f"no move recorded for {bits(d)} under attack {a}")
            elif d2 not in {x for _, x in replies_of(g, d, a)}:
                problems.append(f"illegal move {bits(d)} -> {bits(d2)} under attack {a}")
            elif d2 not in fam:
                problems.append(f"move {bits(d)} -> {bits(d2)} leaves the family")
    return problems


# ---------------------------------------------------------------- attacker certificates


@dataclass(frozen=True)
class AttackCertificate:
    """Attacker plan that beats every defender line from every dominating start.

    The decision tree is stored as a DAG: ``attack[d]`` is the vertex to attack
    in configuration ``d``; every reply is either non-dominating (a leaf) or a
    configuration of strictly smaller ``depth``.
    """

    graph: Graph
    k: int
    game: str
    attack: dict[int, int]
    depth: dict[int, int]

    @property
    def max_depth(self) -> int:
        return max(self.depth.values(), default=0)

    def replies(self, d: int) -> list[int]:
        _, replies_of = _RULES[self.game]
        return [d2 for _, d2 in replies_of(self.graph, d, self.attack[d])]

    def __call__(self, d: int) -> int:
        return self.attack[d]

    def verify(self) -> list[str]:
        g = self.graph
        problems = []
        for d in enumerate_dominating_sets(g, self.k):
            if d not in self.attack:
                problems.append(f"dominating start {bits(d)} is not covered")
                continue
            a = self.attack[d]
            attacks_of, _ = _RULES[self.game]
            if a not in attacks_of(g, d):
                problems.append(f"{bits(d)}: attack {a} is not a legal forcing attack")
                continue
            for d2 in self.replies(d):
                if g.is_dominating(d2) and self.depth.get(d2, 10**9) >= self.depth[d]:
                    problems.append(f"{bits(d)}: reply {bits(d2)} escapes the certificate")
        return problems

    def tree(self, d: int) -> dict:
        """Explicit decision tree below ``d`` (exponential in depth; for small exports)."""
        node = {"config": bits(d), "attack": self.attack[d], "replies": []}
        for d2 in self.replies(d):
            if self.graph.is_dominating(d2):
                node["replies"].append(self.tree(d2))
            else:
                node["replies"].append({"config": bits(d2), "leaf": "not dominating"})
        return node

    def to_json(self) -> dict:
        return {
            "game": self.game,
            "k": self.k,
            "n": self.graph.n,
            "max_depth": self.max_depth,
            "nodes": [
                {"config": bits(d), "attack": a, "depth": self.depth[d]}
                for d, a in sorted(self.attack.items(), key=lambda kv: bits(kv[0]))
            ],
        }


def attacker_certificate(g: Graph, k: int, game: str = EVICTION, deadline: Optional[float] = None) -> AttackCertificate:
    fp = solve_worklist(g, k, game, deadline)
    if fp.safe:
        raise CertificateMisuseError(f"{k} guards defend {g.name or 'the graph'}; no attacker certificate exists")
    return AttackCertificate(g, k, game, fp.attack, fp.depth)


# ---------------------------------------------------------------- simulation

Defender = Callable[[int, int], Optional[int]]
Attacker = Callable[[int], int]


@dataclass
class Step:
    index: int
    attack: int
    before: int
    after: int
    rejected: bool = False
    violation: Optional[str] = None

    def to_json(self) -> dict:
        out = {"step": self.index, "attack": self.attack, "before": bits(self.before), "after": bits(self.after)}
        if self.rejected:
            out["rejected"] = "attacked vertex carries no guard"
        if self.violation:
            out["violation"] = self.violation
        return out


@dataclass
class Transcript:
    start: int
    steps: list[Step]
    violation_step: Optional[int] = None

    @property
    def final(self) -> int:
        return self.steps[-1].after if self.steps else self.start

    @property
    def rejected(self) -> int:
        return sum(s.rejected for s in self.steps)

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json()) + "\n" for s in self.steps)


def greedy_defender(g: Graph) -> Defender:
    """Evicts the attacked guard to its lowest-index unoccupied neighbour."""

    def respond(d: int, v: int) -> int:
        free = g.adj[v] & ~d
        if not free:
            return d
        return d & ~(1 << v) | (free & -free)

    return respond


def delaying_defender(cert: AttackCertificate) -> Defender:
    """Picks the reply the certificate needs longest to refute; the strongest losing defence."""
    g = cert.graph

    def respond(d: int, v: int) -> int:
        free = g.adj[v] & ~d
        if not free:
            return d
        options = [d & ~(1 << v) | 1 << w for w in bits(free)]
        return max(options, key=lambda x: cert.depth.get(x, -1) if g.is_dominating(x) else -2)

    return respond


def simulate(
    g: Graph,
    strategy: Union[StrategyFamily, Defender],
    attacks: Union[Sequence[int], int, Attacker],
    steps: Optional[int] = None,
    start: Optional[int] = None,
) -> Transcript:
    """Play the eviction game and record every step.

    ``attacks`` is a fixed sequence, an integer seed for uniformly random legal
    attacks, or a callable choosing an attack from the current configuration.
    Attacks on unoccupied vertices are recorded as rejected and the attacker is
    asked again.  Play stops at the first step where the defender has no legal
    reply or the guards stop dominating.
    """
    if start is None:
        if not isinstance(strategy, StrategyFamily):
            raise ValueError("a start configuration is required for callable defenders")
        start = strategy.family[0]
    if isinstance(attacks, int):
        rng = random.Random(attacks)
        choose: Attacker = lambda d: rng.choice(bits(d))  # noqa: E731
        total = steps if steps is not None else 0
    elif callable(attacks):
        choose = attacks
        total = steps if steps is not None else 0
    else:
        seq = list(attacks)
        it = iter(seq)
        choose = lambda d: next(it)  # noqa: E731
        total = len(seq) if steps is None else min(steps, len(seq))

    transcript = Transcript(start, [])
    if not g.is_dominating(start):
        transcript.violation_step = 0
        return transcript
    d = start
    for i in range(1, total + 1):
        a = choose(d)
        if not 0 <= a < g.n or not d >> a & 1:
            transcript.steps.append(Step(i, a, d, d, rejected=True))
            continue
        d2 = strategy(d, a)
        step = Step(i, a, d, d if d2 is None else d2)
        if d2 is None:
            step.violation = "no move available"
        elif d2 != d and d2 not in {x for _, x in eviction_replies(g, d, a)}:
            step.violation = "illegal move"
        elif d2 == d and g.adj[a] & ~d:
            step.violation = "guard refused to move"
        elif not g.is_dominating(d2):
            step.violation = "not dominating"
        transcript.steps.append(step)
        if step.violation:
            transcript.violation_step = i
            break
        d = d2
    return transcript
