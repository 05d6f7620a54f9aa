"""Exact automorphism groups, orbits, the induced edge action and a
canonical form for isomorph rejection.

Groups are stored as explicit element lists (identity first), which is
what the distinguishing checks need; desk-scale group orders fit memory.
The enumeration refines an equitable colouring (degree, then iterated
neighbour-colour multisets) and backtracks over colour-respecting maps.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .errors import AutCapExceededError, CanonicalBoundExceededError
from .graphs import Graph, edge, to_graph6

DEFAULT_AUT_CAP = 10 ** 6
DEFAULT_CANONICAL_BOUND = 10


@dataclass(frozen=True)
class Permutation:
    image: tuple  # image[v] is the image of vertex v

    def __post_init__(self):
        if sorted(self.image) != list(range(len(self.image))):
            raise ValueError("image is not a bijection on 0..n-1")

    def __call__(self, v: int) -> int:
        return self.image[v]

    def is_identity(self) -> bool:
        return all(i == v for v, i in enumerate(self.image))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for v, i in enumerate(self.image):
            inv[i] = v
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """self after other: (self*other)(v) = self(other(v))."""
        return Permutation(tuple(self.image[i] for i in other.image))


@dataclass(frozen=True)
class AutomorphismGroup:
    n: int
    elements: tuple  # tuple[Permutation, ...], identity first

    @property
    def order(self) -> int:
        return len(self.elements)

    def non_identity(self):
        return self.elements[1:]


@dataclass(frozen=True)
class CanonicalCode:
    code: str  # graph6 string of the canonically relabelled graph


def _aut_cap() -> int:
    raw = os.environ.get("DISTING_AUT_CAP")
    return int(raw) if raw else DEFAULT_AUT_CAP


def refined_colors(g: Graph) -> list:
    """Equitable colouring: start from degrees, refine by neighbour-colour
    multisets until stable.  Colour ids are relabelling-invariant."""
    colors = [g.degree(v) for v in range(g.n)]
    colors = _canon_ids(colors)
    while True:
        sig = [
            (colors[v], tuple(sorted(colors[u] for u in g.neighbors(v))))
            for v in range(g.n)
        ]
        new = _canon_ids(sig)
        if new == colors:
            return colors
        colors = new


def _canon_ids(values) -> list:
    order = {s: i for i, s in enumerate(sorted(set(values)))}
    return [order[s] for s in values]


def _enumerate_automorphisms(g: Graph, cap: int) -> tuple:
    n = g.n
    if n == 0:
        return (tuple(),)
    colors = refined_colors(g)
    by_color = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    # map small colour classes first; ties broken by index for determinism
    order = sorted(range(n), key=lambda v: (len(by_color[colors[v]]), colors[v], v))
    adj = g.adjbits
    img = [-1] * n
    used = [False] * n
    found = []

    def bt(k: int):
        if k == n:
            found.append(tuple(img))
            if len(found) > cap:
                raise AutCapExceededError(
                    f"automorphism group exceeds cap {cap}; raise DISTING_AUT_CAP"
                )
            return
        v = order[k]
        av = adj[v]
        for w in by_color[colors[v]]:
            if used[w]:
                continue
            ok = True
            for u in order[:k]:
                if ((av >> u) & 1) != ((adj[w] >> img[u]) & 1):
                    ok = False
                    break
            if ok:
                img[v] = w
                used[w] = True
                bt(k + 1)
                used[w] = False
                img[v] = -1

    bt(0)
    return tuple(found)


@lru_cache(maxsize=100000)
def _automorphisms_cached(g: Graph, cap: int) -> AutomorphismGroup:
    raw = _enumerate_automorphisms(g, cap)
    ident = tuple(range(g.n))
    rest = sorted(p for p in raw if p != ident)
    elements = tuple(Permutation(p) for p in [ident] + rest)
    return AutomorphismGroup(g.n, elements)


def automorphisms(g: Graph, cap: int | None = None) -> AutomorphismGroup:
    return _automorphisms_cached(g, cap if cap is not None else _aut_cap())


def vertex_orbits(g: Graph, auts: AutomorphismGroup | None = None) -> list:
    """Orbits of Aut(G) on vertices, as sorted lists, ordered by least member."""
    if auts is None:
        auts = automorphisms(g)
    parent = list(range(g.n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in auts.elements:
        for v, w in enumerate(p.image):
            ra, rb = find(v), find(w)
            if ra != rb:
                parent[rb] = ra
    groups = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


@lru_cache(maxsize=500000)
def induced_edge_action(g: Graph, p: Permutation) -> Permutation:
    """The permutation of g.edge_list indices induced by a vertex automorphism."""
    edges = g.edge_list
    index = {e: i for i, e in enumerate(edges)}
    image = []
    for u, v in edges:
        target = edge(p(u), p(v))
        if target not in index:
            raise ValueError("permutation is not an automorphism of the graph")
        image.append(index[target])
    return Permutation(tuple(image))


# ---------------------------------------------------------------------------
# Canonical form: lexicographically minimal upper-triangle bit string over
# the individualisation-refinement search tree.  The code is rendered as
# the graph6 string of the canonically relabelled graph (same bit order).
# ---------------------------------------------------------------------------

def canonical_graph(g: Graph, max_n: int = DEFAULT_CANONICAL_BOUND) -> Graph:
    if g.n > max_n:
        raise CanonicalBoundExceededError(f"n={g.n} exceeds canonical-form bound {max_n}")
    n = g.n
    if n <= 1:
        return g
    adj = g.adjbits
    colors = refined_colors(g)
    by_color = {}
    for v in range(n):
        by_color.setdefault(colors[v], []).append(v)
    cells = [sorted(by_color[c]) for c in sorted(by_color)]

    best_bits: list | None = None
    best_perm: list | None = None

    def split(cells, placed):
        color = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                color[v] = (ci, tuple((adj[v] >> p) & 1 for p in placed))
        while True:
            sig = {
                v: (color[v], tuple(sorted(color[u] for u in g.neighbors(v) if u in color)))
                for v in color
            }
            ids = {s: i for i, s in enumerate(sorted(set(sig.values())))}
            new = {v: ids[sig[v]] for v in color}
            if len(set(new.values())) == len(set(color.values())):
                break
            color = new
        out = {}
        for v in color:
            out.setdefault(color[v], []).append(v)
        return [sorted(out[c]) for c in sorted(out)]

    def bt(placed, bits, cells, lower):
        nonlocal best_bits, best_perm
        if not cells:
            if lower or best_bits is None:
                best_bits = list(bits)
                best_perm = list(placed)
            return
        target = cells[0]
        rest = cells[1:]
        for v in target:
            seg = [(adj[v] >> p) & 1 for p in placed]
            child_lower = lower
            if not child_lower and best_bits is not None:
                pos = len(bits)
                prune = False
                for off, b in enumerate(seg):
                    ref = best_bits[pos + off]
                    if b > ref:
                        prune = True
                        break
                    if b < ref:
                        child_lower = True
                        break
                if prune:
                    continue
            remaining = [c for c in ([x for x in target if x != v], *rest) if c]
            new_cells = split(remaining, placed + [v]) if remaining else []
            bt(placed + [v], bits + seg, new_cells, child_lower)

    bt([], [], cells, False)
    assert best_perm is not None
    pos = {v: i for i, v in enumerate(best_perm)}
    return Graph.from_edges(n, ((pos[a], pos[b]) for a, b in g.edges))


@lru_cache(maxsize=200000)
def canonical_form(g: Graph, max_n: int = DEFAULT_CANONICAL_BOUND) -> CanonicalCode:
    return CanonicalCode(to_graph6(canonical_graph(g, max_n)))
