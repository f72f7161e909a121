"""Canonical labelling and isomorph-free enumeration for small graphs.

The canonical form is the lexicographically largest graph6 bit string over all
labellings reachable by colour refinement plus individualisation.  No
automorphism pruning is attempted; fine for the n <= 8 graphs it is used on.
"""

from __future__ import annotations

from typing import Iterator

from .graph import Graph, bits, emit_graph6

CANON_CAP = 10


def _refine(adj: tuple[int, ...], colours: list[int]) -> list[int]:
    """Colour refinement; colours stay canonical because new ids are ranks of invariant signatures."""
    n = len(adj)
    while True:
        sigs = [(colours[v], tuple(sorted(colours[u] for u in bits(adj[v])))) for v in range(n)]
        ranking = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranking[s] for s in sigs]
        if len(ranking) == len(set(colours)):
            return new
        colours = new


def _code(adj: tuple[int, ...], order: list[int]) -> int:
    """graph6 upper-triangle bits of the graph relabelled so that ``order[i]`` becomes vertex i."""
    code = 0
    n = len(order)
    for j in range(1, n):
        row = adj[order[j]]
        for i in range(j):
            code = code << 1 | (row >> order[i] & 1)
    return code


def canonical_order(g: Graph) -> list[int]:
    """Vertex order (new index -> old vertex) of the canonical relabelling."""
    if g.n > CANON_CAP:
        raise ValueError(f"canonical form limited to {CANON_CAP} vertices")
    adj = g.adj
    best: list = [None, None]

    def search(colours: list[int]) -> None:
        colours = _refine(adj, colours)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        target = next((cells[c] for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            order = sorted(range(g.n), key=lambda v: colours[v])
            code = _code(adj, order)
            if best[0] is None or code > best[0]:
                best[0], best[1] = code, order
            return
        # individualise each vertex of the first non-trivial cell in turn
        for v in target:
            split = [2 * c + (1 if u != v and c == colours[v] else 0) for u, c in enumerate(colours)]
            search(split)

    search([0] * g.n)
    return best[1]


def canonical_form(g: Graph) -> Graph:
    order = canonical_order(g)
    perm = [0] * g.n
    for new, old in enumerate(order):
        perm[old] = new
    return g.relabel(perm)


def canonical_graph6(g: Graph) -> str:
    return emit_graph6(canonical_form(g))


def all_graphs(n: int, connected: bool = False) -> Iterator[Graph]:
    """Every graph on ``n`` vertices up to isomorphism, as canonical forms.

    Built by adding a vertex with every possible neighbourhood to each graph on
    n-1 vertices and keeping one representative per canonical form.
    """
    if n < 1:
        raise ValueError("n must be positive")
    layer = {canonical_graph6(Graph(1, (0,))): Graph(1, (0,))}
    for m in range(2, n + 1):
        nxt: dict[str, Graph] = {}
        for key in sorted(layer):
            base = layer[key]
            for nbrs in range(1 << (m - 1)):
                adj = list(base.adj) + [nbrs]
                for u in bits(nbrs):
                    adj[u] |= 1 << (m - 1)
                cand = Graph(m, tuple(adj))
                c = canonical_form(cand)
                g6 = emit_graph6(c)
                if g6 not in nxt:
                    nxt[g6] = c
        layer = nxt
    for key in sorted(layer):
        g = layer[key]
        if not connected or g.is_connected():
            yield Graph(g.n, g.adj, key)
