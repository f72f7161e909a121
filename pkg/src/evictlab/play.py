"""Text REPL for playing the eviction game against the solver.

Board markers: ``G`` occupied, ``S`` occupied and surrounded (an attack there
changes nothing), ``.`` unoccupied.
"""

from __future__ import annotations

import sys
from typing import Optional, TextIO

from .bounds import game_feasible
from .game import (
    EVICTION,
    AttackCertificate,
    delaying_defender,
    eviction_attacks,
    eviction_replies,
    extract_eviction_family,
    solve_worklist,
)
from .graph import Graph, bits, mask_of

ATTACKER = "attacker"
DEFENDER = "defender"


class Unplayable(ValueError):
    pass


def render(g: Graph, d: int) -> str:
    cells = []
    for v in range(g.n):
        if not d >> v & 1:
            mark = "."
        elif g.adj[v] & ~d:
            mark = "G"
        else:
            mark = "S"
        cells.append(f"{v}:{mark}")
    return " ".join(cells)


def heuristic_attack(g: Graph, d: int, safe: frozenset[int]) -> int:
    """Attack leaving the defender the fewest replies that stay inside the safe set."""
    options = eviction_attacks(g, d) or bits(d)
    return min(options, key=lambda v: (sum(d2 in safe for _, d2 in eviction_replies(g, d, v)), v))


class Session:
    def __init__(self, g: Graph, k: int, role: str, inp: TextIO = sys.stdin, out: TextIO = sys.stdout,
                 max_rounds: Optional[int] = None):
        if role not in (ATTACKER, DEFENDER):
            raise ValueError("role is 'attacker' or 'defender' (the human's side)")
        if not 1 <= k <= g.n:
            raise Unplayable(f"k must lie in 1..{g.n}")
        if not game_feasible(g, k):
            raise Unplayable(f"{g.n} vertices with {k} guards is beyond what the engine can solve exactly")
        self.g, self.k, self.role = g, k, role
        self.inp, self.out = inp, out
        self.max_rounds = max_rounds
        self.fp = solve_worklist(g, k, EVICTION)
        if not self.fp.dominating:
            raise Unplayable(f"no {k} vertices dominate this graph")

    def say(self, text: str) -> None:
        print(text, file=self.out)

    def ask(self, prompt: str) -> Optional[str]:
        self.out.write(prompt)
        self.out.flush()
        line = self.inp.readline()
        if not line:
            return None
        line = line.strip()
        return None if line in ("q", "quit", "exit") else line

    def _vertex(self, text: str) -> Optional[int]:
        try:
            v = int(text)
        except ValueError:
            return None
        return v if 0 <= v < self.g.n else None

    def run(self) -> str:
        """Play until someone wins, the input ends or the round limit hits.

        Returns ``"attacker"``, ``"defender"`` (round limit survived) or ``"quit"``.
        """
        self.say(f"{self.g.name or 'graph'}: {self.g.n} vertices, {len(self.g.edges())} edges, {self.k} guards")
        self.say("markers: G guard, S surrounded guard, . empty; 'q' quits")
        if self.role == ATTACKER:
            return self._human_attacks()
        return self._human_defends()

    def _human_attacks(self) -> str:
        g, fp = self.g, self.fp
        if fp.safe:
            family = extract_eviction_family(g, self.k)
            d = min(family.family, key=bits)
            respond = family.respond
            self.say(f"engine defends with a solved strategy: {self.k} guards suffice")
        else:
            cert = AttackCertificate(g, self.k, EVICTION, fp.attack, fp.depth)
            d = max(fp.dominating, key=lambda x: (fp.depth[x], [-v for v in bits(x)]))
            respond = delaying_defender(cert)
            self.say(f"warning: {self.k} guards cannot defend this graph; "
                     "the engine plays a heuristic that delays defeat as long as possible")
        rounds = 0
        while self.max_rounds is None or rounds < self.max_rounds:
            self.say(render(g, d))
            line = self.ask("attack> ")
            if line is None:
                return "quit"
            v = self._vertex(line)
            if v is None:
                self.say(f"not a vertex: {line!r}")
                continue
            if not d >> v & 1:
                self.say(f"vertex {v} is unoccupied; only vertices with a guard may be attacked")
                continue
            rounds += 1
            if not g.adj[v] & ~d:
                self.say(f"guard on {v} is surrounded and stays put")
                continue
            d2 = respond(d, v)
            (w,) = bits(d2 & ~d)
            self.say(f"guard moves {v} -> {w}")
            d = d2
            if not g.is_dominating(d):
                self.say(render(g, d))
                self.say("guards no longer dominate: attacker wins")
                return "attacker"
        self.say(f"round limit reached after {rounds} attacks: defender holds")
        return "defender"

    def _place(self) -> Optional[int]:
        g = self.g
        while True:
            line = self.ask(f"place {self.k} guards (vertices separated by spaces)> ")
            if line is None:
                return None
            vs = [self._vertex(t) for t in line.replace(",", " ").split()]
            if None in vs or len(set(vs)) != self.k:
                self.say(f"give {self.k} distinct vertices in 0..{g.n - 1}")
                continue
            d = mask_of(vs)
            if not g.is_dominating(d):
                self.say("those guards do not dominate the graph")
                continue
            return d

    def _human_defends(self) -> str:
        g, fp = self.g, self.fp
        d = self._place()
        if d is None:
            return "quit"
        if fp.safe:
            self.say(f"{self.k} guards can defend this graph; the engine attacks by heuristic "
                     "(fewest replies staying safe) until the defence slips")
        mode = None
        rounds = 0
        while self.max_rounds is None or rounds < self.max_rounds:
            self.say(render(g, d))
            if d in fp.safe:
                v = heuristic_attack(g, d, fp.safe)
            else:
                if mode != "certificate":
                    self.say(f"engine attacks by certificate: at most {fp.depth[d]} attacks to break domination")
                    mode = "certificate"
                v = fp.attack[d]
            rounds += 1
            free = g.adj[v] & ~d
            if not free:
                self.say(f"engine attacks {v}: surrounded, guard stays")
                continue
            self.say(f"engine attacks {v}; choose an empty neighbour from {bits(free)}")
            while True:
                line = self.ask("move to> ")
                if line is None:
                    return "quit"
                w = self._vertex(line)
                if w is not None and free >> w & 1:
                    break
                self.say(f"illegal move: {line!r} is not an empty neighbour of {v}")
            d = d & ~(1 << v) | 1 << w
            if not g.is_dominating(d):
                self.say(render(g, d))
                self.say("guards no longer dominate: attacker wins")
                return "attacker"
        self.say(f"round limit reached after {rounds} attacks: defender holds")
        return "defender"
