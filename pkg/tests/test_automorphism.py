import itertools
import random

import pytest

from disting import (
    AutomorphismGroup,
    FamilySpec,
    Graph,
    Permutation,
    automorphisms,
    canonical_form,
    induced_edge_action,
    make_family,
    vertex_orbits,
)
from disting.audit import enumerate_connected
from disting.automorphism import canonical_graph, refined_colors
from disting.errors import AutCapExceededError, CanonicalBoundExceededError
from disting.graphs import edge


def fam(kind, p):
    return make_family(FamilySpec(kind, p))


def random_graph(rng, n):
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5])


def relabel(g, perm):
    return Graph.from_edges(g.n, ((perm[a], perm[b]) for a, b in g.edges))


def aut_bruteforce(g):
    """All automorphisms by filtering the full symmetric group."""
    out = set()
    for perm in itertools.permutations(range(g.n)):
        if all(edge(perm[a], perm[b]) in g.edges for a, b in g.edges):
            out.add(perm)
    return out


class TestGroupEnumeration:
    @pytest.mark.parametrize("g,order", [
        (fam("complete", 3), 6),
        (fam("complete", 4), 24),
        (fam("path", 3), 2),
        (fam("path", 4), 2),
        (fam("cycle", 4), 8),
        (fam("cycle", 5), 10),
        (fam("star", 4), 24),
        (fam("spider", 5), 120),
        (fam("friendship", 3), 48),
    ])
    def test_known_orders(self, g, order):
        assert automorphisms(g).order == order

    def test_matches_bruteforce_small(self):
        for n in range(1, 6):
            for g in enumerate_connected(n):
                got = {p.image for p in automorphisms(g).elements}
                assert got == aut_bruteforce(g)

    def test_matches_bruteforce_random_disconnected(self):
        rng = random.Random(21)
        for _ in range(40):
            g = random_graph(rng, 6)
            got = {p.image for p in automorphisms(g).elements}
            assert got == aut_bruteforce(g)

    def test_identity_first(self):
        for g in (fam("complete", 4), fam("path", 5), fam("star", 3)):
            assert automorphisms(g).elements[0].is_identity()

    def test_group_axioms(self):
        for g in (fam("cycle", 5), fam("star", 3), fam("friendship", 2)):
            auts = automorphisms(g)
            elems = set(auts.elements)
            for p in auts.elements:
                assert p.inverse() in elems
                for q in auts.elements:
                    assert p.compose(q) in elems

    def test_cap_exceeded(self):
        with pytest.raises(AutCapExceededError):
            automorphisms(fam("complete", 5), cap=10)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("DISTING_AUT_CAP", "5")
        with pytest.raises(AutCapExceededError):
            automorphisms(fam("cycle", 4))


class TestOrbits:
    def test_star_orbits(self):
        assert vertex_orbits(fam("star", 4)) == [[0], [1, 2, 3, 4]]

    def test_complete_single_orbit(self):
        assert vertex_orbits(fam("complete", 4)) == [[0, 1, 2, 3]]

    def test_path_orbits(self):
        assert vertex_orbits(fam("path", 4)) == [[0, 3], [1, 2]]

    def test_asymmetric_graph_has_singleton_orbits(self):
        rigid = [g for g in enumerate_connected(6) if len(aut_bruteforce(g)) == 1]
        assert rigid  # the smallest asymmetric graphs appear at n = 6
        for g in rigid[:5]:
            assert automorphisms(g).order == 1
            assert vertex_orbits(g) == [[v] for v in range(6)]

    def test_orbit_sizes_divide_group_order(self):
        for n in range(2, 6):
            for g in enumerate_connected(n):
                order = automorphisms(g).order
                for orb in vertex_orbits(g):
                    assert order % len(orb) == 0


class TestEdgeAction:
    def test_path3_swap_transposes_edges(self):
        g = fam("path", 3)
        swap = Permutation((2, 1, 0))
        assert induced_edge_action(g, swap).image == (1, 0)

    def test_k2_action_trivial(self):
        g = fam("complete", 2)
        swap = Permutation((1, 0))
        assert induced_edge_action(g, swap).is_identity()

    def test_rejects_non_automorphism(self):
        with pytest.raises(ValueError):
            induced_edge_action(fam("path", 3), Permutation((1, 0, 2)))

    def test_homomorphism_property(self):
        for g in (fam("cycle", 5), fam("complete", 4), fam("star", 3)):
            auts = automorphisms(g)
            for p in auts.elements:
                for q in auts.elements:
                    lhs = induced_edge_action(g, p.compose(q))
                    rhs = induced_edge_action(g, p).compose(induced_edge_action(g, q))
                    assert lhs == rhs


class TestCanonicalForm:
    def test_all_relabelings_of_path3(self):
        g = fam("path", 3)
        codes = {
            canonical_form(relabel(g, perm)).code
            for perm in itertools.permutations(range(3))
        }
        assert len(codes) == 1

    def test_random_relabeling_invariance(self):
        rng = random.Random(13)
        for _ in range(100):
            g = random_graph(rng, rng.randint(2, 8))
            perm = list(range(g.n))
            rng.shuffle(perm)
            assert canonical_form(relabel(g, perm)) == canonical_form(g)

    def test_distinct_graphs_distinct_codes(self):
        gs = [fam("path", 4), fam("star", 3), fam("cycle", 4), fam("complete", 4)]
        codes = {canonical_form(g).code for g in gs}
        assert len(codes) == len(gs)

    def test_canonical_graph_is_isomorphic(self):
        rng = random.Random(17)
        for _ in range(30):
            g = random_graph(rng, 6)
            cg = canonical_graph(g)
            assert cg.n == g.n and len(cg.edges) == len(g.edges)
            assert any(
                all(edge(p[a], p[b]) in cg.edges for a, b in g.edges)
                for p in itertools.permutations(range(6))
            )

    def test_five_vertex_classes(self):
        # every labeled connected graph on 5 vertices falls into one of 21 classes
        seen = set()
        total = 0
        from disting import is_connected
        for mask in range(1 << 10):
            pairs = list(itertools.combinations(range(5), 2))
            g = Graph.from_edges(5, [pairs[i] for i in range(10) if (mask >> i) & 1])
            if is_connected(g):
                total += 1
                seen.add(canonical_form(g).code)
        assert len(seen) == 21
        assert total == 728

    def test_bound_exceeded(self):
        with pytest.raises(CanonicalBoundExceededError):
            canonical_form(Graph.from_edges(11, [(0, 1)]))

    def test_bound_override(self):
        g = fam("path", 11)
        assert canonical_form(g, max_n=11).code == canonical_form(relabel(
            g, list(reversed(range(11)))), max_n=11).code


def test_refined_colors_respect_orbits():
    # vertices in one orbit can never get different refinement colors
    for n in range(2, 6):
        for g in enumerate_connected(n):
            colors = refined_colors(g)
            for orb in vertex_orbits(g):
                assert len({colors[v] for v in orb}) == 1


def test_permutation_validation():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_group_order_property():
    g = fam("complete", 3)
    auts = automorphisms(g)
    assert isinstance(auts, AutomorphismGroup)
    assert auts.order == len(auts.elements)
