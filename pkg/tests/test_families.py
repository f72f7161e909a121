import networkx as nx
import pytest

from evictlab import families
from evictlab.families import generate, parse_family
from evictlab.graph import CapacityError, bits


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_gk1_shape():
    g = families.gk(1)
    assert g.n == 9
    assert g.degree(7) == 8
    assert g.degree(8) == 1


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gk_hub_is_unique_max_degree(k):
    g = families.gk(k)
    assert g.n == 7 * k + 2
    degs = [g.degree(v) for v in range(g.n)]
    assert degs.count(7 * k + 1) == 1


def test_universal_pair():
    g = generate("join(complete:2;empty:4)")
    assert g.n == 6
    assert all(g.degree(v) == 5 for v in (0, 1))
    assert g == families.universal_pair(4)


def test_spider_two_is_p5():
    assert nx.is_isomorphic(to_nx(families.spider(2)), nx.path_graph(5))


@pytest.mark.parametrize("k", [2, 3, 4])
def test_spider_is_subdivided_star(k):
    g = families.spider(k)
    assert g.n == 2 * k + 1
    star = nx.star_graph(k)
    assert nx.is_isomorphic(to_nx(g), _subdivide(star))


def _subdivide(h):
    out = nx.Graph()
    nxt = max(h.nodes) + 1
    for u, v in h.edges:
        out.add_edge(u, nxt)
        out.add_edge(nxt, v)
        nxt += 1
    return out


def test_g2_prime_adds_exactly_one_edge():
    a, b = families.g2(), families.g2_prime()
    assert a.n == b.n == 9
    assert set(b.edges()) - set(a.edges()) == {(0, 1)}


def test_anomaly_graphs():
    for t in (2, 3):
        g, h = families.anomaly(t), families.anomaly_bridged(t)
        assert g.n == t + 3
        assert g.degree(0) == 0
        assert set(h.edges()) - set(g.edges()) == {(0, 1)}


def test_generators_are_simple_graphs():
    for spec in ["cycle:7", "path:5", "kmn:3,4", "star:4", "copies(3;complete:4)", "union(cycle:3;path:2)", "g2", "g2'"]:
        g = generate(spec)
        for v in range(g.n):
            assert not g.adj[v] >> v & 1
            assert all(g.adj[u] >> v & 1 for u in bits(g.adj[v]))


def test_copies_and_union():
    g = generate("copies(3;complete:4)")
    assert g.n == 12 and g.m == 18
    assert nx.number_connected_components(to_nx(g)) == 3


def test_spec_round_trip_text():
    for text in ["cycle:7", "kmn:2,3", "join(complete:2;empty:4)", "copies(2;cycle:7)", "g2'"]:
        assert str(parse_family(text)) == text


@pytest.mark.parametrize("bad", ["cycle", "cycle:0", "kmn:3", "nope:1", "cycle:x", "copies(2)"])
def test_bad_specs(bad):
    with pytest.raises(ValueError):
        generate(bad)


def test_capacity():
    with pytest.raises(CapacityError):
        generate("gk:10")
    with pytest.raises(CapacityError):
        generate("copies(5;complete:13)")
