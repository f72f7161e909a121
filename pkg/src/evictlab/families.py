"""Generators for the graph families used throughout the package.

Family specs have a compact text form used by the CLI::

    cycle:7   path:12   complete:5   empty:4   star:3   kmn:3,4
    spider:3  gk:2      upk:4        anomaly:3 anomaly+:3
    g2        g2'
    join(complete:2;empty:4)   union(complete:1;upk:3)   copies(3;complete:4)

``upk:m`` is the join of K2 with m independent vertices; ``anomaly:t`` is an
isolated vertex plus ``upk:t`` and ``anomaly+:t`` bridges that isolated vertex
to a universal vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MAX_VERTICES, CapacityError, Graph

# Vertex order of the two-block graph with the pendant v0 (see g2()).
G2_LABELS = ("v0", "v1", "v1'", "v1''", "v1'''", "v2", "v2'", "v2''", "v2'''")


def _checked(n: int) -> int:
    if n > MAX_VERTICES:
        raise CapacityError(f"requested graph has {n} vertices; at most {MAX_VERTICES} supported")
    if n < 1:
        raise ValueError("graph must have at least one vertex")
    return n


def empty(n: int) -> Graph:
    return Graph.from_edges(_checked(n), [], f"empty({n})")


def complete(n: int) -> Graph:
    _checked(n)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)], f"K{n}")


def path(n: int) -> Graph:
    _checked(n)
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    _checked(n)
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def complete_bipartite(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise ValueError("complete bipartite parts must be nonempty")
    _checked(m + n)
    return Graph.from_edges(m + n, [(a, m + b) for a in range(m) for b in range(n)], f"K{m},{n}")


def star(k: int) -> Graph:
    return complete_bipartite(1, k)


def spider(k: int) -> Graph:
    """K_{1,k} with every edge subdivided once: centre 0, middles 1..k, feet k+1..2k."""
    if k < 1:
        raise ValueError("spider needs at least one leg")
    _checked(2 * k + 1)
    edges = [(0, i) for i in range(1, k + 1)] + [(i, i + k) for i in range(1, k + 1)]
    return Graph.from_edges(2 * k + 1, edges, f"Sp(2;{k})")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = _checked(g.n + h.n)
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    return Graph.from_edges(n, edges, f"({g.name or 'G'} + {h.name or 'H'})")


def join(g: Graph, h: Graph) -> Graph:
    n = _checked(g.n + h.n)
    edges = g.edges() + [(u + g.n, v + g.n) for u, v in h.edges()]
    edges += [(u, g.n + v) for u in range(g.n) for v in range(h.n)]
    return Graph.from_edges(n, edges, f"({g.name or 'G'} v {h.name or 'H'})")


def copies(k: int, g: Graph) -> Graph:
    if k < 1:
        raise ValueError("need at least one copy")
    n = _checked(k * g.n)
    edges = [(u + i * g.n, v + i * g.n) for i in range(k) for u, v in g.edges()]
    return Graph.from_edges(n, edges, f"{k}{g.name or 'G'}")


def universal_pair(m: int) -> Graph:
    """K2 joined with m independent vertices; vertices 0 and 1 are universal."""
    g = join(complete(2), empty(m))
    return Graph(g.n, g.adj, f"K2 v K{m}bar")


def anomaly(t: int) -> Graph:
    """Isolated vertex 0 plus K2 v tK1 on vertices 1..t+2 (1 and 2 universal there)."""
    if t < 1:
        raise ValueError("t must be positive")
    g = disjoint_union(complete(1), universal_pair(t))
    return Graph(g.n, g.adj, f"K1 + (K2 v K{t}bar)")


def anomaly_bridged(t: int) -> Graph:
    """:func:`anomaly` with the isolated vertex joined to a vertex of degree t+1."""
    g = anomaly(t).add_edge(0, 1)
    return Graph(g.n, g.adj, f"K1 + (K2 v K{t}bar) + bridge")


def gk(k: int) -> Graph:
    """k disjoint 7-cycles, a vertex v (index 7k) adjacent to all of them, and w (7k+1) pendant on v."""
    if k < 1:
        raise ValueError("k must be positive")
    n = _checked(7 * k + 2)
    v, w = 7 * k, 7 * k + 1
    edges = [(7 * c + i, 7 * c + (i + 1) % 7) for c in range(k) for i in range(7)]
    edges += [(u, v) for u in range(7 * k)] + [(v, w)]
    return Graph.from_edges(n, edges, f"G_{k}")


def g2() -> Graph:
    """Two copies of K2 v 2K1 joined by an edge between universal vertices, plus pendant v0 on v2.

    Vertex order follows :data:`G2_LABELS`.  In each block the unprimed and the
    single-primed vertex are the universal pair; v1'-v2' is the bridge.
    """
    ix = {label: i for i, label in enumerate(G2_LABELS)}
    pairs = [
        ("v1", "v1'"), ("v1", "v1''"), ("v1", "v1'''"), ("v1'", "v1''"), ("v1'", "v1'''"),
        ("v2", "v2'"), ("v2", "v2''"), ("v2", "v2'''"), ("v2'", "v2''"), ("v2'", "v2'''"),
        ("v1'", "v2'"), ("v0", "v2"),
    ]
    return Graph.from_edges(9, [(ix[a], ix[b]) for a, b in pairs], "G2")


def g2_prime() -> Graph:
    g = g2().add_edge(G2_LABELS.index("v0"), G2_LABELS.index("v1"))
    return Graph(g.n, g.adj, "G2'")


# ---------------------------------------------------------------- specs


@dataclass(frozen=True)
class FamilySpec:
    tag: str
    params: tuple[int, ...] = ()
    children: tuple[FamilySpec, ...] = ()

    def __str__(self) -> str:
        if self.tag in ("join", "union"):
            return f"{self.tag}({';'.join(map(str, self.children))})"
        if self.tag == "copies":
            return f"copies({self.params[0]};{self.children[0]})"
        if not self.params:
            return self.tag
        return f"{self.tag}:{','.join(map(str, self.params))}"


_SIMPLE = {
    "empty": (1, empty),
    "complete": (1, complete),
    "path": (1, path),
    "cycle": (1, cycle),
    "star": (1, star),
    "kmn": (2, complete_bipartite),
    "spider": (1, spider),
    "gk": (1, gk),
    "upk": (1, universal_pair),
    "anomaly": (1, anomaly),
    "anomaly+": (1, anomaly_bridged),
    "g2": (0, g2),
    "g2'": (0, g2_prime),
}


def _split_top(text: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == ";" and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    parts.append(text[start:])
    return [p.strip() for p in parts]


def parse_family(text: str) -> FamilySpec:
    text = text.strip()
    for tag in ("join", "union", "copies"):
        if text.startswith(tag + "(") and text.endswith(")"):
            args = _split_top(text[len(tag) + 1 : -1])
            if tag == "copies":
                if len(args) != 2:
                    raise ValueError("copies takes (k;spec)")
                return FamilySpec(tag, (int(args[0]),), (parse_family(args[1]),))
            if len(args) < 2:
                raise ValueError(f"{tag} needs at least two sub-specs")
            return FamilySpec(tag, (), tuple(parse_family(a) for a in args))
    name, _, rest = text.partition(":")
    if name not in _SIMPLE:
        raise ValueError(f"unknown graph family {name!r}")
    arity, _ = _SIMPLE[name]
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
    except ValueError:
        raise ValueError(f"non-integer parameter in {text!r}") from None
    if len(params) != arity:
        raise ValueError(f"family {name!r} takes {arity} parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise ValueError("family parameters must be positive")
    return FamilySpec(name, params)


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_family(spec)
    if spec.tag in ("join", "union"):
        op = join if spec.tag == "join" else disjoint_union
        parts = [generate(c) for c in spec.children]
        g = parts[0]
        for h in parts[1:]:
            g = op(g, h)
        return g
    if spec.tag == "copies":
        return copies(spec.params[0], generate(spec.children[0]))
    _, fn = _SIMPLE[spec.tag]
    return fn(*spec.params)
