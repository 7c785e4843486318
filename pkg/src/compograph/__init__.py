"""Reconstruction of vertex-labeled graphs from subgraph composition queries."""

from .graphs import (
    Alphabet,
    Graph,
    LabeledGraph,
    automorphism_group,
    build_graph,
    canonical_labeling,
    connected_induced_subgraphs,
    labeled,
    labelings_isomorphic,
    parse_graph,
    serialize_graph,
    serialize_labeled,
)
from .oracle import (
    CompositionMultiset,
    Oracle,
    composition_of,
    fingerprint,
    full_multiset,
    full_sum,
)
from .catalog import (
    FamilySpec,
    bistar,
    complete,
    enumerate_connected_graphs,
    enumerate_trees,
    generate,
    parse_family,
    path,
    star,
    substar,
    triangle_tail,
)
from .confusability import (
    ScanEntry,
    ScanReport,
    WitnessPair,
    classify,
    equicomposable,
    sum_equicomposable,
    survey,
)
from .counting import chi_closed, chi_enumerate, density_ratio
from .reconstruct import (
    ALGORITHMS,
    ReconstructionResult,
    SplitLI,
    brute_force_reconstruct,
    center_label,
    reconstruct_auto,
    reconstruct_bistar,
    reconstruct_bistar_k2,
    reconstruct_once_subdivided_star,
    reconstruct_star,
    reconstruct_triangle_tail,
    reconstruct_twin_leaf_star,
    split_leaves_internal,
)
from . import constructions, structure

__version__ = "0.1.0"
