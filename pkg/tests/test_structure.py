from compograph import catalog
from compograph.graphs import build_graph
from compograph.structure import (
    bistar_parts,
    star_parts,
    substar_labelings_isomorphic,
    substar_parts,
    triangle_tail_parts,
    twin_leaf_star_parts,
)


def test_star_parts():
    g = catalog.generate(catalog.star(4))
    assert star_parts(g) == (0, (1, 2, 3, 4))
    assert star_parts(catalog.generate(catalog.path(4))) is None


def test_substar_parts_arbitrary_numbering():
    # the (1,2,3) subdivided star drawn as a path with a pendant vertex
    g = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])
    center, branches = substar_parts(g)
    assert center == 2
    assert sorted(len(b) for b in branches) == [1, 2, 3]
    assert (6,) in branches
    assert (1, 0) in branches
    assert (3, 4, 5) in branches


def test_substar_parts_rejects_double_center():
    g = catalog.generate(catalog.bistar(2, 2))
    assert substar_parts(g) is None


def test_twin_leaf_star_parts():
    g = catalog.generate(catalog.substar(1, 1, 3))
    u1, u2, spine = twin_leaf_star_parts(g)
    assert {u1, u2} == {1, 2}
    assert spine == (0, 3, 4, 5)
    assert twin_leaf_star_parts(catalog.generate(catalog.substar(1, 2, 2))) is None


def test_bistar_parts():
    g = catalog.generate(catalog.bistar(1, 3))
    u, v, lu, lv = bistar_parts(g)
    assert (u, v) == (0, 1)
    assert lu == (2,) and lv == (3, 4, 5)
    assert bistar_parts(catalog.generate(catalog.star(4))) is None
    assert bistar_parts(catalog.generate(catalog.substar(1, 1, 3))) is None
    # the (1,1,2) subdivided star is itself a bistar
    assert bistar_parts(catalog.generate(catalog.substar(1, 1, 2))) is not None


def test_bistar_parts_p4():
    g = catalog.generate(catalog.path(4))
    u, v, lu, lv = bistar_parts(g)
    assert {u, v} == {1, 2}
    assert len(lu) == len(lv) == 1


def test_triangle_tail_parts():
    g = catalog.generate(catalog.triangle_tail(3))
    u1, u2, spine = triangle_tail_parts(g)
    assert (u1, u2) == (0, 1)
    assert spine == (2, 3, 4, 5)
    assert triangle_tail_parts(catalog.generate(catalog.path(5))) is None
    # a square with a tail has no triangle
    g = build_graph(6, [(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5)])
    assert triangle_tail_parts(g) is None


def test_substar_labeling_isomorphism():
    g = catalog.generate(catalog.substar(2, 2))
    # two length-2 branches from a center of degree 2: not a substar carrier
    import pytest

    with pytest.raises(ValueError):
        substar_labelings_isomorphic(g, (0,) * 5, (0,) * 5)
    g = catalog.generate(catalog.substar(2, 2, 1))
    a = (0, 1, 2, 0, 1, 1)
    b = (0, 0, 1, 1, 2, 1)  # the two length-2 branches swapped
    assert substar_labelings_isomorphic(g, a, b)
    c = (0, 1, 2, 1, 0, 1)
    assert not substar_labelings_isomorphic(g, a, c)
