import pytest

from compograph import catalog
from compograph.graphs import build_graph, labeled


@pytest.fixture(scope="session")
def nine_vertex_tree():
    """Four-symbol labeled tree used across the oracle tests.

    Vertex 0 is the degree-4 hub (B); 1 is the A-hub with leaves A, C;
    4 is the D-hub with leaves A, D; 7, 8 are C and D leaves on the hub.
    """
    g = build_graph(9, [(5, 4), (4, 0), (0, 1), (1, 2), (1, 3), (4, 6), (7, 0), (0, 8)])
    return labeled(g, (1, 0, 0, 2, 3, 0, 3, 2, 3), k=4)


@pytest.fixture(scope="session")
def gem():
    return build_graph(5, [(0, 1), (1, 2), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)])


@pytest.fixture(scope="session")
def worked_subdivided_star():
    """Binary labeling of the (1,1,2,2) subdivided star with center A."""
    g = catalog.generate(catalog.substar(1, 1, 2, 2))
    return labeled(g, (0, 0, 1, 0, 1, 1, 0), k=2)
