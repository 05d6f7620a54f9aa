"""Exact computation of the distinguishing number D and index D'.

The search enumerates labelings only up to renaming of the label values
(restricted-growth order) and prunes with the set of automorphisms still
consistent with the partial labeling.  A branch dies as soon as some
surviving non-identity automorphism fixes every still-unlabelled item,
because no completion can break it; a branch succeeds as soon as the
survivor set is empty.  "Yes" answers may come from a short random phase,
"no" answers always come from exhaustion.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .automorphism import AutomorphismGroup, Permutation, automorphisms, induced_edge_action
from .errors import SearchBudgetExceededError, UndefinedIndexError
from .graphs import Graph

DEFAULT_BUDGET = 10 ** 8
RANDOM_TRIES = 64

VertexLabeling = tuple  # tuple[int, ...], index = vertex
EdgeLabeling = dict     # canonical edge -> label


@dataclass(frozen=True)
class DistResult:
    value: int
    witness: Union[tuple, tuple]  # vertex labeling tuple, or tuple of (edge, label) pairs

    def witness_dict(self) -> dict:
        return dict(self.witness)


def is_distinguishing_vertex(g: Graph, auts: AutomorphismGroup, labels) -> bool:
    if len(labels) != g.n or auts.n != g.n:
        raise ValueError("labeling/group size does not match the graph")
    labels = tuple(labels)
    return all(
        any(labels[v] != labels[p.image[v]] for v in range(g.n))
        for p in auts.non_identity()
    )


def is_distinguishing_edge(g: Graph, auts: AutomorphismGroup, labels: EdgeLabeling) -> bool:
    if set(labels) != set(g.edges):
        raise ValueError("edge labeling domain is not exactly E(G)")
    edges = g.edge_list
    vec = tuple(labels[e] for e in edges)
    for p in auts.non_identity():
        action = induced_edge_action(g, p)
        if all(vec[i] == vec[action.image[i]] for i in range(len(edges))):
            return False
    return True


def edge_action_faithful(g: Graph, auts: AutomorphismGroup | None = None) -> bool:
    """True iff no non-trivial automorphism acts trivially on the edge set."""
    if auts is None:
        auts = automorphisms(g)
    for p in auts.non_identity():
        action = induced_edge_action(g, p)
        if action.is_identity():
            return False
    return True


# ---------------------------------------------------------------------------
# Core search over items (vertices or edges) acted on by item permutations.
# ---------------------------------------------------------------------------

def _item_orbits(count: int, perms) -> list:
    parent = list(range(count))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p in perms:
        for i, j in enumerate(p):
            ra, rb = find(i), find(j)
            if ra != rb:
                parent[rb] = ra
    orbits = {}
    for i in range(count):
        orbits.setdefault(find(i), []).append(i)
    return list(orbits.values())


def _min_labels(count: int, perms, budget: int, tries: int = RANDOM_TRIES):
    """Minimal d such that some d-labeling of 0..count-1 is preserved by no
    permutation in `perms`, together with a witness.  `perms` excludes the
    identity.  Raises SearchBudgetExceededError past `budget` nodes."""
    if not perms:
        return 1, tuple([0] * count)

    orbit_of = [0] * count
    orbits = _item_orbits(count, perms)
    for orb in orbits:
        for i in orb:
            orbit_of[i] = len(orb)
    # break big symmetries early: descending orbit size
    order = sorted(range(count), key=lambda i: (-orbit_of[i], i))
    pos = {item: k for k, item in enumerate(order)}
    # survivors: (perm, inverse, last position in `order` touched by its support)
    survivors0 = []
    for p in perms:
        inv = [0] * count
        for i, j in enumerate(p):
            inv[j] = i
        last = max(pos[i] for i in range(count) if p[i] != i)
        survivors0.append((p, tuple(inv), last))
    survivors0.sort(key=lambda s: s[2])

    rng = random.Random(0x5eed)
    nodes = 0

    for d in range(1, count + 1):
        # random phase: a verified hit short-circuits the exhaustive pass
        for _ in range(tries):
            cand = tuple(rng.randrange(d) for _ in range(count))
            if all(any(cand[i] != cand[p[i]] for i in range(count)) for p, _, _ in survivors0):
                return d, cand

        labels = [-1] * count
        found = _assign(0, 0, survivors0, labels, order, d, count)
        nodes += found[1]
        if nodes > budget:
            raise SearchBudgetExceededError(f"search budget {budget} exceeded")
        if found[0] is not None:
            return d, found[0]
    raise AssertionError("all-distinct labeling must be distinguishing")


def _assign(depth, max_used, survivors, labels, order, d, count):
    """Returns (witness or None, nodes visited)."""
    nodes = 1
    if not survivors:
        out = list(labels)
        for i in range(count):
            if out[i] < 0:
                out[i] = 0
        return tuple(out), nodes
    if depth == count:
        return None, nodes
    item = order[depth]
    top = min(max_used + 1, d - 1)
    for lab in range(top + 1):
        labels[item] = lab
        nxt = []
        dead = False
        for s in survivors:
            p, inv, last = s
            j = p[item]
            lj = labels[j]
            if lj >= 0 and lj != lab:
                continue
            k = inv[item]
            lk = labels[k]
            if lk >= 0 and lk != lab:
                continue
            if last <= depth:
                # consistent and fixes every later item: unbreakable
                dead = True
                break
            nxt.append(s)
        if not dead:
            w, sub = _assign(depth + 1, max(max_used, lab), nxt, labels, order, d, count)
            nodes += sub
            if w is not None:
                labels[item] = -1
                return w, nodes
        labels[item] = -1
    return None, nodes


# ---------------------------------------------------------------------------
# Public solvers
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100000)
def distinguishing_number(g: Graph, budget: int = DEFAULT_BUDGET) -> DistResult:
    auts = automorphisms(g)
    if g.n == 0:
        return DistResult(1, tuple())
    perms = [p.image for p in auts.non_identity()]
    d, witness = _min_labels(g.n, perms, budget)
    return DistResult(d, witness)


def _edge_perms(g: Graph, auts: AutomorphismGroup) -> list:
    perms = []
    for p in auts.non_identity():
        action = induced_edge_action(g, p)
        if action.is_identity():
            raise UndefinedIndexError(
                "D' undefined: a non-trivial automorphism acts trivially on edges"
            )
        perms.append(action.image)
    return perms


@lru_cache(maxsize=100000)
def distinguishing_index(g: Graph, budget: int = DEFAULT_BUDGET) -> DistResult:
    auts = automorphisms(g)
    edges = g.edge_list
    perms = _edge_perms(g, auts)
    if not edges:
        return DistResult(1, tuple())
    d, vec = _min_labels(len(edges), perms, budget)
    return DistResult(d, tuple((e, vec[i]) for i, e in enumerate(edges)))


def distinguishing_index_or_none(g: Graph, budget: int = DEFAULT_BUDGET):
    """DistResult, or None when D' is undefined for g."""
    try:
        return distinguishing_index(g, budget)
    except UndefinedIndexError:
        return None


# ---------------------------------------------------------------------------
# Independent oracle: enumerate every restricted-growth labeling in natural
# item order and test it against the full automorphism list, no pruning.
# ---------------------------------------------------------------------------

def brute_force_value(g: Graph, mode: str) -> int:
    auts = automorphisms(g)
    if mode == "vertex":
        if g.n > 6:
            raise ValueError("vertex brute force limited to n <= 6")
        count = g.n
        perms = [p.image for p in auts.non_identity()]
    elif mode == "edge":
        if len(g.edges) > 10:
            raise ValueError("edge brute force limited to |E| <= 10")
        count = len(g.edge_list)
        perms = _edge_perms(g, auts)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if not perms or count == 0:
        return 1

    def rgs(prefix, max_used, d):
        if len(prefix) == count:
            yield prefix
            return
        for lab in range(min(max_used + 1, d - 1) + 1):
            yield from rgs(prefix + [lab], max(max_used, lab), d)

    for d in range(1, count + 1):
        for labels in rgs([], -1, d):
            if all(any(labels[i] != labels[p[i]] for i in range(count)) for p in perms):
                return d
    raise AssertionError("unreachable")
