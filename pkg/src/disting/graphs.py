"""Immutable simple graphs, the graph6 codec, local operations and named families.

Vertices are always 0..n-1 and edges are stored canonically as (min, max)
pairs.  All operations are pure: they return new Graph values and never
mutate their input.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional

from .errors import Graph6Error

Edge = tuple[int, int]

FAMILY_KINDS = (
    "complete",
    "star",
    "path",
    "cycle",
    "friendship",
    "spider",
    "apex-pair",
)


def edge(u: int, v: int) -> Edge:
    """Canonical (min, max) form of an edge; rejects loops."""
    if u == v:
        raise ValueError(f"loop edge ({u},{u}) is not allowed")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset  # frozenset[Edge], each stored as (min, max)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise ValueError(f"edge {e} is not a canonical pair inside 0..{self.n - 1}")

    @staticmethod
    def from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(n, frozenset(edge(u, v) for u, v in pairs))

    @cached_property
    def edge_list(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def adjacency(self) -> tuple[frozenset, ...]:
        nbrs = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def adjbits(self) -> tuple[int, ...]:
        """Adjacency rows packed as integers (bit v of row u set iff uv is an edge)."""
        rows = [0] * self.n
        for u, v in self.edges:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return tuple(rows)

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and edge(u, v) in self.edges

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for n={self.n}")

    def check_edge(self, e: tuple[int, int]) -> Edge:
        e = edge(*e)
        if e not in self.edges:
            raise ValueError(f"{e} is not an edge of the graph")
        return e

    def __repr__(self):  # keep pytest output readable
        return f"Graph(n={self.n}, edges={sorted(self.edges)})"


# ---------------------------------------------------------------------------
# graph6 codec (short form, n <= 62): header byte 63+n, then the upper
# triangle bits x(0,1), x(0,2), x(1,2), x(0,3), ... packed big-endian six
# bits per byte, each byte offset by 63, zero padded.
# ---------------------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    if g.n > 62:
        raise Graph6Error(f"n={g.n} exceeds short-form graph6 capacity (62)")
    bits = []
    for j in range(1, g.n):
        row = g.adjbits[j]
        for i in range(j):
            bits.append((row >> i) & 1)
    while len(bits) % 6:
        bits.append(0)
    chars = [chr(63 + g.n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        chars.append(chr(63 + val))
    return "".join(chars)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s:
        raise Graph6Error("empty graph6 record")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise Graph6Error(f"character {ch!r} outside graph6 range 63..126")
    n = ord(s[0]) - 63
    if n == 63:
        raise Graph6Error("long-form graph6 (n > 62) is not supported")
    nbits = n * (n - 1) // 2
    body = s[1:]
    expected = (nbits + 5) // 6
    if len(body) != expected:
        raise Graph6Error(f"expected {expected} payload bytes for n={n}, got {len(body)}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        for k in range(5, -1, -1):
            bits.append((val >> k) & 1)
    if any(bits[nbits:]):
        raise Graph6Error("non-zero padding bits in graph6 record")
    edges = []
    idx = 0
    for j in range(1, n):
        for i in range(j):
            if bits[idx]:
                edges.append((i, j))
            idx += 1
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# The five local operations.  Deletions and contractions compact the
# surviving vertex ids order-preservingly.
# ---------------------------------------------------------------------------

def deletion_map(n: int, v: int) -> dict:
    """old vertex id -> new vertex id after deleting v (v absent)."""
    return {u: (u if u < v else u - 1) for u in range(n) if u != v}


def remove_vertex(g: Graph, v: int) -> Graph:
    g.check_vertex(v)
    m = deletion_map(g.n, v)
    return Graph.from_edges(g.n - 1, ((m[a], m[b]) for a, b in g.edges if v not in (a, b)))


def remove_edge(g: Graph, e: tuple[int, int]) -> Graph:
    e = g.check_edge(e)
    return Graph(g.n, g.edges - {e})


def odot(g: Graph, v: int) -> Graph:
    """Remove every edge joining two neighbours of v; v itself stays."""
    g.check_vertex(v)
    nb = g.neighbors(v)
    dropped = {e for e in g.edges if e[0] in nb and e[1] in nb}
    return Graph(g.n, g.edges - dropped)


def contract_vertex(g: Graph, v: int) -> Graph:
    """Delete v and put a clique on its open neighbourhood."""
    g.check_vertex(v)
    m = deletion_map(g.n, v)
    pairs = [(m[a], m[b]) for a, b in g.edges if v not in (a, b)]
    nb = sorted(g.neighbors(v))
    pairs.extend((m[a], m[b]) for a, b in combinations(nb, 2))
    return Graph.from_edges(g.n - 1, pairs)


def contraction_map(n: int, e: Edge) -> dict:
    """old vertex id -> new vertex id after contracting e into its min endpoint."""
    v, w = e
    m = deletion_map(n, w)
    m[w] = m[v]
    return m


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Merge the endpoints of e into the smaller-index endpoint."""
    e = g.check_edge(e)
    m = contraction_map(g.n, e)
    pairs = [(m[a], m[b]) for a, b in g.edges if (a, b) != e]
    return Graph.from_edges(g.n - 1, pairs)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for w in g.neighbors(u):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == g.n


# ---------------------------------------------------------------------------
# Named parametric families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    kind: str
    param: int

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise ValueError(f"unknown family kind {self.kind!r}")
        if self.param < 1:
            raise ValueError("family parameter must be >= 1")
        if self.kind == "friendship" and self.param < 2:
            raise ValueError("friendship graphs require param >= 2")
        if self.kind == "apex-pair" and self.param < 3:
            raise ValueError("apex-pair graphs require param >= 3")
        if self.kind == "cycle" and self.param < 3:
            raise ValueError("cycles require param >= 3")


def make_family(spec: FamilySpec) -> Graph:
    k, p = spec.kind, spec.param
    if k == "complete":
        return Graph.from_edges(p, combinations(range(p), 2))
    if k == "star":
        # centre 0 joined to leaves 1..p
        return Graph.from_edges(p + 1, ((0, i) for i in range(1, p + 1)))
    if k == "path":
        return Graph.from_edges(p, ((i, i + 1) for i in range(p - 1)))
    if k == "cycle":
        return Graph.from_edges(p, [(i, (i + 1) % p) for i in range(p)])
    if k == "friendship":
        # centre 0 plus p triangle blades (1+2i, 2+2i)
        pairs = []
        for i in range(p):
            a, b = 1 + 2 * i, 2 + 2 * i
            pairs += [(0, a), (0, b), (a, b)]
        return Graph.from_edges(2 * p + 1, pairs)
    if k == "spider":
        # centre 0 plus p legs of length two: 0 - (1+2i) - (2+2i)
        pairs = []
        for i in range(p):
            pairs += [(0, 1 + 2 * i), (1 + 2 * i, 2 + 2 * i)]
        return Graph.from_edges(2 * p + 1, pairs)
    if k == "apex-pair":
        # apex 0 joined to everything; one internal edge (1,2); p-2 isolated-in-base vertices
        pairs = [(0, i) for i in range(1, p + 1)]
        pairs.append((1, 2))
        return Graph.from_edges(p + 1, pairs)
    raise AssertionError(k)


# ---------------------------------------------------------------------------
# Structural vertex / edge sets used by the contraction proofs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StructuralSets:
    open_nbhd: frozenset
    closed_nbhd: frozenset
    closed_complement: frozenset
    deg1_nbrs: frozenset       # degree-one neighbours of x
    common_nbrs: frozenset     # vertices adjacent to both x and y
    pendant_edges: frozenset   # edges joining x to a degree-one vertex
    common_edges: frozenset    # edges joining x or y to a common neighbour


def structural_sets(g: Graph, x: int, y: Optional[int] = None) -> StructuralSets:
    g.check_vertex(x)
    if y is not None:
        g.check_vertex(y)
        if y == x:
            raise ValueError("x and y must be distinct")
    open_nbhd = g.neighbors(x)
    closed = open_nbhd | {x}
    complement = frozenset(range(g.n)) - closed
    deg1 = frozenset(u for u in open_nbhd if g.degree(u) == 1)
    pendant = frozenset(edge(x, u) for u in deg1)
    if y is None:
        common = frozenset()
        common_e = frozenset()
    else:
        common = open_nbhd & g.neighbors(y)
        common_e = frozenset(edge(a, u) for u in common for a in (x, y))
    return StructuralSets(open_nbhd, frozenset(closed), complement, deg1, common, pendant, common_e)
