"""Simple graphs on at most 64 vertices, stored as per-vertex adjacency bitsets.

Vertex sets are plain ``int`` bitmasks throughout the package: bit ``i`` set
means vertex ``i`` belongs to the set.  :func:`bits` and :func:`mask_of`
convert between masks and vertex lists.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_VERTICES = 64


class CapacityError(ValueError):
    """A graph (or an operation's input) exceeds a supported size."""


class Graph6Error(ValueError):
    pass


class Graph6HeaderError(Graph6Error):
    pass


class Graph6CharacterError(Graph6Error):
    pass


class Graph6LengthError(Graph6Error):
    pass


class Graph6CapacityError(Graph6Error, CapacityError):
    pass


class EdgeListError(ValueError):
    pass


def bits(mask: int) -> list[int]:
    """Indices of the set bits of ``mask`` in increasing order."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"graph order {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {v} has neighbours outside 0..{self.n - 1}")
            if row >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], name: str = "") -> Graph:
        if not 1 <= n <= MAX_VERTICES:
            raise CapacityError(f"graph order {n} outside 1..{MAX_VERTICES}")
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj), name)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise IndexError(f"vertex {v} out of range 0..{self.n - 1}")

    def neighbors(self, v: int) -> int:
        self._check(v)
        return self.adj[v]

    def closed_neighborhood(self, v: int) -> int:
        self._check(v)
        return self.adj[v] | 1 << v

    def degree(self, v: int) -> int:
        return self.neighbors(v).bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def dominated_by(self, mask: int) -> int:
        """Vertices protected by the guards in ``mask``."""
        out = mask
        for v in bits(mask):
            out |= self.adj[v]
        return out

    def is_dominating(self, mask: int) -> bool:
        return self.dominated_by(mask) == self.full

    def is_independent(self, mask: int) -> bool:
        return all(not (self.adj[v] & mask) for v in bits(mask))

    def is_clique(self, mask: int) -> bool:
        return all((self.adj[v] | 1 << v) & mask == mask for v in bits(mask))

    def add_edge(self, u: int, v: int) -> Graph:
        if u == v:
            raise ValueError("adding a loop is not allowed in a simple graph")
        self._check(u)
        self._check(v)
        adj = list(self.adj)
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        return Graph(self.n, tuple(adj), self.name)

    def complement(self) -> Graph:
        full = self.full
        return Graph(self.n, tuple(full & ~row & ~(1 << v) for v, row in enumerate(self.adj)))

    def induced(self, mask: int) -> tuple[Graph, list[int]]:
        """Subgraph induced by ``mask`` plus the map new index -> old index."""
        keep = bits(mask)
        index = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            adj.append(mask_of(index[u] for u in bits(self.adj[old] & mask)))
        return Graph(len(keep), tuple(adj)), keep

    def relabel(self, perm: list[int]) -> Graph:
        """Graph in which old vertex ``v`` becomes ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()), self.name)

    def is_connected(self) -> bool:
        seen = frontier = 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adj[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == self.full

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges()], "name": self.name}

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<Graph{label} n={self.n} m={self.m}>"


# ---------------------------------------------------------------- graph6


def _n_header(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))


def emit_graph6(g: Graph) -> str:
    bitstream = []
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            bitstream.append(row >> i & 1)
    bitstream.extend([0] * (-len(bitstream) % 6))
    body = []
    for i in range(0, len(bitstream), 6):
        value = 0
        for b in bitstream[i : i + 6]:
            value = value << 1 | b
        body.append(chr(value + 63))
    return _n_header(g.n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[len(">>graph6<<"):]
    if not data:
        raise Graph6HeaderError("empty graph6 record")
    if data[0] in ":;&":
        raise Graph6HeaderError(f"record starts with {data[0]!r}: sparse6/digraph6, not graph6")
    for pos, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise Graph6CharacterError(f"character {ch!r} at position {pos} outside graph6 range")
    if data[0] != "~":
        n, body = ord(data[0]) - 63, data[1:]
    elif len(data) >= 2 and data[1] == "~":
        if len(data) < 8:
            raise Graph6HeaderError("truncated 8-byte graph6 order header")
        n = 0
        for ch in data[2:8]:
            n = n << 6 | (ord(ch) - 63)
        body = data[8:]
    else:
        if len(data) < 4:
            raise Graph6HeaderError("truncated 4-byte graph6 order header")
        n = 0
        for ch in data[1:4]:
            n = n << 6 | (ord(ch) - 63)
        if n < 63:
            raise Graph6HeaderError(f"order {n} must use the 1-byte header")
        body = data[4:]
    if n == 0:
        raise Graph6HeaderError("graph6 record encodes the null graph")
    if n > MAX_VERTICES:
        raise Graph6CapacityError(f"graph6 record has {n} vertices; at most {MAX_VERTICES} supported")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6LengthError(f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (ord(body[k // 6]) - 63) >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def iter_graph6(lines: Iterable[str]) -> Iterator[tuple[int, Graph]]:
    """Yield ``(line_number, graph)`` for every non-blank line of a graph6 stream."""
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if line:
            yield lineno, parse_graph6(line)


# ---------------------------------------------------------------- edge lists


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-indexed)."""
    rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise EdgeListError("edge list must start with an 'n m' header")
    try:
        n, m = int(rows[0][0]), int(rows[0][1])
        edges = [(int(a), int(b)) for a, b in rows[1:]]
    except ValueError as exc:
        raise EdgeListError(f"malformed edge list: {exc}") from None
    if len(edges) != m:
        raise EdgeListError(f"header announces {m} edges, found {len(edges)}")
    if n > MAX_VERTICES:
        raise CapacityError(f"edge list has {n} vertices; at most {MAX_VERTICES} supported")
    try:
        return Graph.from_edges(n, edges)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, CapacityError):
            raise
        raise EdgeListError(str(exc)) from None


def emit_edge_list(g: Graph) -> str:
    edges = g.edges()
    return "\n".join([f"{g.n} {len(edges)}"] + [f"{u} {v}" for u, v in edges]) + "\n"


def emit_json(g: Graph) -> str:
    return json.dumps(g.to_json())
