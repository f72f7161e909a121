"""Exact classical graph parameters: alpha, gamma, theta, omega, matchings.

Everything here is exact; instance sizes in this package keep the searches cheap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional

from .graph import CapacityError, Graph, bits, mask_of

MATCHING_CAP = 20

Matching = tuple[tuple[int, int], ...]


# ---------------------------------------------------------------- independence


def _greedy_clique_cover(adj: tuple[int, ...], cand: int) -> int:
    """Number of cliques in a greedy partition of ``cand``; an upper bound on alpha(cand)."""
    count = 0
    while cand:
        v = (cand & -cand).bit_length() - 1
        clique = 1 << v
        common = adj[v] & cand
        while common:
            u = (common & -common).bit_length() - 1
            clique |= 1 << u
            common &= adj[u]
        cand &= ~clique
        count += 1
    return count


def independence_number(g: Graph) -> tuple[int, int]:
    """Return ``(alpha, witness_mask)`` by branch and bound."""
    adj = g.adj
    best = [0, 0]

    def search(cand: int, chosen: int, size: int) -> None:
        if not cand:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + _greedy_clique_cover(adj, cand) <= best[0]:
            return
        # isolated-in-cand vertices are always taken
        free = 0
        for v in bits(cand):
            if not adj[v] & cand:
                free |= 1 << v
        if free:
            search(cand & ~free, chosen | free, size + free.bit_count())
            return
        v = max(bits(cand), key=lambda x: ((adj[x] & cand).bit_count(), -x))
        search(cand & ~adj[v] & ~(1 << v), chosen | 1 << v, size + 1)
        search(cand & ~(1 << v), chosen, size)

    search(g.full, 0, 0)
    return best[0], best[1]


def clique_number(g: Graph) -> tuple[int, int]:
    return independence_number(g.complement())


def maximum_independent_sets(g: Graph, alpha: Optional[int] = None) -> Iterator[int]:
    """Every independent set of size alpha(g), in increasing mask order of construction."""
    if alpha is None:
        alpha = independence_number(g)[0]
    adj = g.adj

    def rec(cand: int, chosen: int, need: int) -> Iterator[int]:
        if need == 0:
            yield chosen
            return
        if cand.bit_count() < need or _greedy_clique_cover(adj, cand) < need:
            return
        v = (cand & -cand).bit_length() - 1
        rest = cand & ~(1 << v)
        yield from rec(rest & ~adj[v], chosen | 1 << v, need - 1)
        yield from rec(rest, chosen, need)

    yield from rec(g.full, 0, alpha)


def disjoint_max_independent_sets(g: Graph, t: int) -> Optional[list[int]]:
    """``t`` pairwise-disjoint maximum independent sets, or ``None`` if there are none."""
    if t < 1:
        raise ValueError("t must be at least 1")
    alpha, witness = independence_number(g)
    if t == 1:
        return [witness]
    if t * alpha > g.n:
        return None
    family = sorted(maximum_independent_sets(g, alpha))

    def rec(start: int, used: int, picked: list[int]) -> Optional[list[int]]:
        if len(picked) == t:
            return list(picked)
        if g.n - used.bit_count() < (t - len(picked)) * alpha:
            return None
        for i in range(start, len(family)):
            s = family[i]
            if s & used:
                continue
            picked.append(s)
            found = rec(i + 1, used | s, picked)
            if found:
                return found
            picked.pop()
        return None

    return rec(0, 0, [])


def max_disjoint_max_independent_sets(g: Graph) -> list[int]:
    """A largest collection of pairwise-disjoint maximum independent sets."""
    best = disjoint_max_independent_sets(g, 1)
    t = 2
    while True:
        found = disjoint_max_independent_sets(g, t)
        if found is None:
            return best
        best, t = found, t + 1


# ---------------------------------------------------------------- domination


def domination_number(g: Graph) -> tuple[int, int]:
    """Return ``(gamma, witness_mask)``; iterative deepening over the lowest undominated vertex."""
    closed = [g.adj[v] | 1 << v for v in range(g.n)]
    full = g.full

    def rec(dominated: int, chosen: int, budget: int) -> Optional[int]:
        if dominated == full:
            return chosen
        if budget == 0:
            return None
        undominated = full & ~dominated
        u = (undominated & -undominated).bit_length() - 1
        for v in bits(closed[u]):
            found = rec(dominated | closed[v], chosen | 1 << v, budget - 1)
            if found is not None:
                return found
        return None

    for k in range(1, g.n + 1):
        found = rec(0, 0, k)
        if found is not None:
            return k, found
    raise AssertionError("unreachable: V(G) dominates G")


# ---------------------------------------------------------------- clique cover


def _exact_coloring(g: Graph) -> list[int]:
    """Minimum proper colouring as a list of colour-class masks (DSATUR branch and bound)."""
    n, adj = g.n, g.adj

    def dsatur_greedy() -> list[int]:
        colour = [-1] * n
        classes: list[int] = []
        for _ in range(n):
            v = max(
                (x for x in range(n) if colour[x] < 0),
                key=lambda x: (len({colour[u] for u in bits(adj[x]) if colour[u] >= 0}), adj[x].bit_count(), -x),
            )
            for c, cls in enumerate(classes):
                if not adj[v] & cls:
                    colour[v] = c
                    classes[c] |= 1 << v
                    break
            else:
                colour[v] = len(classes)
                classes.append(1 << v)
        return classes

    best = dsatur_greedy()
    lower = clique_number(g)[0]
    if len(best) == lower:
        return best

    def rec(classes: list[int], uncoloured: int) -> None:
        nonlocal best
        if len(classes) >= len(best):
            return
        if not uncoloured:
            best = list(classes)
            return

        def sat(x: int) -> int:
            return sum(1 for cls in classes if adj[x] & cls)

        v = max(bits(uncoloured), key=lambda x: (sat(x), (adj[x] & uncoloured).bit_count(), -x))
        rest = uncoloured & ~(1 << v)
        for c in range(len(classes)):
            if not adj[v] & classes[c]:
                classes[c] |= 1 << v
                rec(classes, rest)
                classes[c] &= ~(1 << v)
                if len(best) == lower:
                    return
        if len(classes) + 1 < len(best):
            classes.append(1 << v)
            rec(classes, rest)
            classes.pop()

    rec([], g.full)
    return best


def clique_cover_number(g: Graph) -> tuple[int, list[int]]:
    """Return ``(theta, partition)``; each part induces a clique of ``g``."""
    parts = _exact_coloring(g.complement())
    return len(parts), sorted(parts, key=lambda m: (m & -m))


# ---------------------------------------------------------------- matchings


def is_matching(edges: Matching) -> bool:
    seen = 0
    for u, v in edges:
        pair = 1 << u | 1 << v
        if seen & pair or u == v:
            return False
        seen |= pair
    return True


def matched_vertices(edges: Matching) -> int:
    return mask_of(x for e in edges for x in e)


def constrained_matching(g: Graph, s: int) -> Matching:
    """Among matchings covering the most vertices of ``s``, one with fewest edges.

    Ties are broken by the lexicographically smallest sorted edge list.
    """
    if g.n > MATCHING_CAP:
        raise CapacityError(f"constrained matching limited to {MATCHING_CAP} vertices, got {g.n}")
    if s & ~g.full:
        raise ValueError("target set is not a subset of V(G)")
    adj = g.adj
    # edges covering no vertex of s never appear in a minimum matching
    relevant = s
    for v in bits(s):
        relevant |= adj[v]

    @lru_cache(maxsize=None)
    def best(avail: int) -> tuple[int, int, Matching]:
        # key: (-covered, edges, edge list); smaller is better
        if not avail:
            return (0, 0, ())
        u = (avail & -avail).bit_length() - 1
        rest = avail & ~(1 << u)
        options = [best(rest)]
        for v in bits(adj[u] & rest):
            gain = (s >> u & 1) + (s >> v & 1)
            if not gain:
                continue
            cov, size, edges = best(rest & ~(1 << v))
            options.append((cov - gain, size + 1, ((u, v),) + edges))
        return min(options)

    return best(relevant)[2]


def maximum_matching(g: Graph) -> Matching:
    return constrained_matching(g, g.full)


# ---------------------------------------------------------------- structure


def is_triangle_free(g: Graph) -> bool:
    return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges())


def has_induced_p4(g: Graph) -> bool:
    for quad in combinations(range(g.n), 4):
        m = mask_of(quad)
        degs = sorted((g.adj[v] & m).bit_count() for v in quad)
        # P4 is the only 4-vertex graph with degree sequence 1,1,2,2
        if degs == [1, 1, 2, 2]:
            return True
    return False


def is_cograph(g: Graph) -> bool:
    return not has_induced_p4(g)


def _components(g: Graph, mask: int) -> list[int]:
    comps = []
    left = mask
    while left:
        seen = frontier = left & -left
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & mask & ~seen
            seen |= frontier
        comps.append(seen)
        left &= ~seen
    return comps


def is_cograph_recursive(g: Graph) -> bool:
    """Cograph test via decomposition into disjoint unions and joins down to K1."""
    comp = g.complement()

    def rec(mask: int) -> bool:
        if mask.bit_count() == 1:
            return True
        parts = _components(g, mask)
        if len(parts) == 1:
            parts = _components(comp, mask)
            if len(parts) == 1:
                return False
        return all(rec(p) for p in parts)

    return rec(g.full)


# ---------------------------------------------------------------- report


@dataclass(frozen=True)
class ParamReport:
    alpha: int
    gamma: int
    theta: int
    omega: int
    independent_set: int
    dominating_set: int
    clique_partition: tuple[int, ...]
    clique: int

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha,
            "gamma": self.gamma,
            "theta": self.theta,
            "omega": self.omega,
            "independent_set": bits(self.independent_set),
            "dominating_set": bits(self.dominating_set),
            "clique_partition": [bits(p) for p in self.clique_partition],
            "clique": bits(self.clique),
        }


def param_report(g: Graph) -> ParamReport:
    alpha, ind = independence_number(g)
    gamma, dom = domination_number(g)
    theta, parts = clique_cover_number(g)
    omega, clique = clique_number(g)
    return ParamReport(alpha, gamma, theta, omega, ind, dom, tuple(parts), clique)
