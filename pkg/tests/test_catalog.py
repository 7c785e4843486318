import pytest

from compograph import catalog
from compograph.errors import InvalidSpec, OrderTooLarge
from compograph.graphs import graphs_isomorphic


def test_generate_path():
    g = catalog.generate(catalog.path(4))
    assert g.edges == ((0, 1), (1, 2), (2, 3))


def test_generate_substar_conventions():
    g = catalog.generate(catalog.substar(1, 1, 4))
    assert g.n == 7
    assert g.degree(0) == 3
    # branches laid out consecutively root to leaf
    assert (0, 1) in g.edges and (0, 2) in g.edges and (0, 3) in g.edges
    assert (3, 4) in g.edges and (4, 5) in g.edges and (5, 6) in g.edges


def test_generate_triangle_tail():
    g = catalog.generate(catalog.triangle_tail(2))
    assert g.n == 5
    assert g.edges == ((0, 1), (0, 2), (1, 2), (2, 3), (3, 4))


def test_generate_bistar():
    g = catalog.generate(catalog.bistar(2, 3))
    assert g.n == 7
    assert g.degree(0) == 3 and g.degree(1) == 4


def test_generate_rejects_bad_specs():
    with pytest.raises(InvalidSpec):
        catalog.generate(catalog.substar())
    with pytest.raises(InvalidSpec):
        catalog.generate(catalog.substar(0, 1))
    with pytest.raises(InvalidSpec):
        catalog.generate(catalog.triangle_tail(0))
    with pytest.raises(InvalidSpec):
        catalog.generate(catalog.path(0))


def test_parse_family_round_trip():
    spec = catalog.parse_family("substar:1,1,4")
    assert spec == catalog.substar(1, 1, 4)
    assert str(spec) == "substar:1,1,4"
    assert catalog.parse_family("path:4") == catalog.path(4)
    with pytest.raises(InvalidSpec):
        catalog.parse_family("frob:3")


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3),
                                     (6, 6), (7, 11), (8, 23)])
def test_tree_atlas_counts(n, count):
    trees = catalog.enumerate_trees(n)
    assert len(trees) == count
    codes = {catalog.canonical_code(t) for t in trees}
    assert len(codes) == count  # pairwise non-isomorphic


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 2), (4, 6), (5, 21)])
def test_graph_atlas_counts(n, count):
    graphs = catalog.enumerate_connected_graphs(n)
    assert len(graphs) == count
    assert len({catalog.canonical_code(g) for g in graphs}) == count


def test_atlas_caps():
    with pytest.raises(OrderTooLarge):
        catalog.enumerate_trees(9)
    with pytest.raises(OrderTooLarge):
        catalog.enumerate_connected_graphs(7)


def test_trees_embed_in_graph_atlas():
    for n in range(1, 7):
        graph_codes = {catalog.canonical_code(g) for g in catalog.enumerate_connected_graphs(n)}
        for t in catalog.enumerate_trees(n):
            assert catalog.canonical_code(t) in graph_codes


def test_named_members_appear_in_order6_tree_atlas():
    # the six 6-vertex trees: path, star, two subdivided stars, a bistar, and
    # the twin-leaf star
    expected = [
        catalog.generate(catalog.path(6)),
        catalog.generate(catalog.star(5)),
        catalog.generate(catalog.substar(1, 1, 3)),
        catalog.generate(catalog.bistar(2, 2)),
        catalog.generate(catalog.substar(1, 2, 2)),
        catalog.generate(catalog.substar(1, 1, 1, 2)),
    ]
    atlas_codes = {catalog.canonical_code(g) for g in catalog.enumerate_trees(6)}
    assert {catalog.canonical_code(g) for g in expected} == atlas_codes


def test_canonical_code_is_isomorphism_invariant():
    g1 = catalog.generate(catalog.triangle_tail(2))
    # same graph, permuted vertices
    from compograph.graphs import build_graph

    perm = (4, 2, 0, 3, 1)
    g2 = build_graph(5, [(perm[u], perm[v]) for u, v in g1.edges])
    assert catalog.canonical_code(g1) == catalog.canonical_code(g2)
    assert graphs_isomorphic(g1, g2)
