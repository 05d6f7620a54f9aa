import random

import pytest

from disting import (
    FamilySpec,
    Graph,
    contract_edge,
    contract_vertex,
    edge,
    is_connected,
    make_family,
    odot,
    parse_graph6,
    remove_edge,
    remove_vertex,
    structural_sets,
    to_graph6,
)
from disting.automorphism import canonical_form
from disting.errors import Graph6Error


def K(n):
    return make_family(FamilySpec("complete", n))


def star(n):
    return make_family(FamilySpec("star", n))


def path(n):
    return make_family(FamilySpec("path", n))


def iso(a, b):
    return canonical_form(a).code == canonical_form(b).code


def random_graph(rng, n):
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.5]
    return Graph.from_edges(n, edges)


class TestGraph6:
    def test_parse_k3(self):
        assert parse_graph6("Bw") == K(3)

    def test_parse_k2(self):
        assert parse_graph6("A_") == K(2)

    def test_parse_empty3(self):
        assert parse_graph6("B?") == Graph.from_edges(3, [])

    def test_encode_k3(self):
        assert to_graph6(K(3)) == "Bw"

    def test_encode_empty3(self):
        assert to_graph6(Graph.from_edges(3, [])) == "B?"

    def test_round_trip_random(self):
        rng = random.Random(7)
        for _ in range(1000):
            g = random_graph(rng, rng.randint(0, 10))
            assert parse_graph6(to_graph6(g)) == g

    def test_round_trip_large_n(self):
        rng = random.Random(11)
        g = random_graph(rng, 62)
        assert parse_graph6(to_graph6(g)) == g

    def test_encode_too_large(self):
        with pytest.raises(Graph6Error):
            to_graph6(Graph.from_edges(63, []))

    def test_bad_length(self):
        with pytest.raises(Graph6Error):
            parse_graph6("Bww")

    def test_out_of_range_char(self):
        with pytest.raises(Graph6Error):
            parse_graph6("B\x1f")

    def test_nonzero_padding(self):
        # K_2 payload must pad with zeros; '~' sets them
        with pytest.raises(Graph6Error):
            parse_graph6("A~")

    def test_empty_record(self):
        with pytest.raises(Graph6Error):
            parse_graph6("")


class TestOperations:
    def test_remove_vertex_k3(self):
        assert remove_vertex(K(3), 0) == K(2)

    def test_remove_star_center(self):
        assert remove_vertex(star(3), 0) == Graph.from_edges(3, [])

    def test_remove_star_leaf(self):
        for n in range(3, 7):
            assert iso(remove_vertex(star(n), 1), star(n - 1))

    def test_remove_vertex_invalid(self):
        with pytest.raises(ValueError):
            remove_vertex(K(3), 3)

    def test_remove_edge_k2(self):
        assert remove_edge(K(2), (0, 1)) == Graph.from_edges(2, [])

    def test_remove_apex_pair_inner_edge(self):
        g = make_family(FamilySpec("apex-pair", 5))
        assert iso(remove_edge(g, (1, 2)), star(5))

    def test_remove_edge_k4_count(self):
        assert len(remove_edge(K(4), (0, 1)).edges) == 5

    def test_remove_nonedge(self):
        with pytest.raises(ValueError):
            remove_edge(star(3), (1, 2))

    def test_odot_complete(self):
        for n in range(3, 7):
            assert iso(odot(K(n), 0), star(n - 1))

    def test_odot_friendship_center(self):
        for n in range(2, 5):
            f = make_family(FamilySpec("friendship", n))
            assert iso(odot(f, 0), star(2 * n))

    def test_odot_path_leaf(self):
        assert odot(path(3), 0) == path(3)

    def test_contract_vertex_star_center(self):
        for n in range(2, 7):
            assert iso(contract_vertex(star(n), 0), K(n))

    def test_contract_vertex_star_leaf(self):
        assert iso(contract_vertex(star(4), 1), star(3))

    def test_contract_vertex_path_middle(self):
        assert contract_vertex(path(3), 1) == K(2)

    def test_contract_edge_star(self):
        for n in range(3, 7):
            assert iso(contract_edge(star(n), (0, 1)), star(n - 1))

    def test_contract_edge_k3(self):
        assert contract_edge(K(3), (0, 1)) == K(2)

    def test_contract_edge_path3(self):
        assert contract_edge(path(3), (0, 1)) == K(2)

    def test_contract_edge_count_disjoint_neighborhoods(self):
        # endpoints without common neighbours: exactly one edge disappears
        rng = random.Random(3)
        checked = 0
        while checked < 50:
            g = random_graph(rng, 7)
            for e in g.edge_list:
                u, v = e
                if not (g.neighbors(u) & g.neighbors(v)):
                    assert len(contract_edge(g, e).edges) == len(g.edges) - 1
                    checked += 1
        assert checked >= 50

    def test_vertex_counts(self):
        g = parse_graph6("DK{")
        assert remove_vertex(g, 2).n == g.n - 1
        assert contract_vertex(g, 2).n == g.n - 1
        assert contract_edge(g, g.edge_list[0]).n == g.n - 1
        assert odot(g, 2).n == g.n
        assert remove_edge(g, g.edge_list[0]).n == g.n

    def test_odot_edges_subset(self):
        rng = random.Random(5)
        for _ in range(50):
            g = random_graph(rng, 6)
            for v in range(6):
                assert odot(g, v).edges <= g.edges

    def test_contract_vertex_clique_on_neighborhood(self):
        rng = random.Random(9)
        for _ in range(30):
            g = random_graph(rng, 6)
            for v in range(6):
                h = contract_vertex(g, v)
                m = {u: (u if u < v else u - 1) for u in range(6) if u != v}
                nb = sorted(g.neighbors(v))
                for i, a in enumerate(nb):
                    for b in nb[i + 1:]:
                        assert h.has_edge(m[a], m[b])


class TestFamilies:
    def test_friendship_counts(self):
        f = make_family(FamilySpec("friendship", 3))
        assert f.n == 7 and len(f.edges) == 9

    def test_spider_counts(self):
        sp = make_family(FamilySpec("spider", 5))
        assert sp.n == 11 and len(sp.edges) == 10

    def test_apex_pair_counts(self):
        g = make_family(FamilySpec("apex-pair", 5))
        assert g.n == 6 and len(g.edges) == 6
        assert g.degree(0) == 5

    def test_star_counts(self):
        assert star(4).n == 5 and len(star(4).edges) == 4

    @pytest.mark.parametrize("kind,param", [
        ("friendship", 1), ("apex-pair", 2), ("cycle", 2), ("complete", 0),
        ("nonsense", 3),
    ])
    def test_invalid_specs(self, kind, param):
        with pytest.raises(ValueError):
            FamilySpec(kind, param)


class TestConnectivity:
    def test_star_connected(self):
        assert is_connected(star(3))

    def test_star_minus_center(self):
        assert not is_connected(remove_vertex(star(3), 0))

    def test_single_vertex(self):
        assert is_connected(Graph.from_edges(1, []))

    def test_empty_graph(self):
        assert is_connected(Graph.from_edges(0, []))


class TestStructuralSets:
    def test_star_center(self):
        s = structural_sets(star(4), 0)
        assert s.deg1_nbrs == frozenset({1, 2, 3, 4})
        assert s.pendant_edges == frozenset(star(4).edges)
        assert s.closed_complement == frozenset()

    def test_k3_pair(self):
        s = structural_sets(K(3), 0, 1)
        assert s.common_nbrs == frozenset({2})
        assert s.common_edges == {(0, 2), (1, 2)}

    def test_path4_pair(self):
        s = structural_sets(path(4), 1, 2)
        assert s.common_nbrs == frozenset()
        assert s.deg1_nbrs == frozenset({0})

    def test_partition_invariant(self):
        rng = random.Random(1)
        for _ in range(30):
            g = random_graph(rng, 6)
            for x in range(6):
                s = structural_sets(g, x)
                assert s.closed_nbhd == s.open_nbhd | {x}
                assert s.closed_complement | s.closed_nbhd == frozenset(range(6))
                assert not (s.closed_complement & s.closed_nbhd)

    def test_same_vertex_rejected(self):
        with pytest.raises(ValueError):
            structural_sets(K(3), 1, 1)


def test_loop_rejected():
    with pytest.raises(ValueError):
        edge(2, 2)


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph(3, frozenset({(2, 1)}))  # non-canonical pair
    with pytest.raises(ValueError):
        Graph(2, frozenset({(0, 2)}))  # endpoint out of range
