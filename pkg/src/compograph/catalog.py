"""Named graph families and exhaustive atlases of small connected graphs/trees.

Vertex-index conventions (relied on by the reconstructors and tests):

* path: vertices 0..n-1 left to right;
* complete: any order (all symmetric);
* star(n): center 0, the n leaves are 1..n (order n+1);
* subdivided star (branch lengths n_1..n_m): center 0, then each branch laid
  out root-to-leaf consecutively, branch i starting at 1 + sum(n_1..n_{i-1});
* bistar(m, n): centers 0 and 1 (adjacent), leaves 2..m+1 on 0, the rest on 1;
* triangle_tail(m): triangle vertices u1=0, u2=1 and the attachment vertex 2,
  tail vertices 3..m+2 (order m+3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidSpec, OrderTooLarge
from .graphs import Graph, build_graph
from .kernels import min_adjacency_code

TREE_ATLAS_CAP = 8
GRAPH_ATLAS_CAP = 6

# number of unlabeled trees / connected graphs by order, used as cross-checks
TREE_COUNTS = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112}

FAMILY_KINDS = ("path", "complete", "star", "substar", "bistar", "triangle-tail")


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    def __str__(self):
        return f"{self.kind}:{','.join(str(p) for p in self.params)}"


def path(n: int) -> FamilySpec:
    return FamilySpec("path", (n,))


def complete(n: int) -> FamilySpec:
    return FamilySpec("complete", (n,))


def star(leaves: int) -> FamilySpec:
    return FamilySpec("star", (leaves,))


def substar(*branches: int) -> FamilySpec:
    return FamilySpec("substar", tuple(branches))


def bistar(m: int, n: int) -> FamilySpec:
    return FamilySpec("bistar", (m, n))


def triangle_tail(m: int) -> FamilySpec:
    return FamilySpec("triangle-tail", (m,))


def parse_family(text: str) -> FamilySpec:
    """Parse 'kind:p1,p2,...' (e.g. 'path:4', 'substar:1,1,4')."""
    kind, _, rest = text.partition(":")
    kind = kind.strip()
    if kind == "s11":  # shorthand for substar:1,1,m
        m = int(rest)
        return substar(1, 1, m) if m >= 1 else path(3)
    if kind not in FAMILY_KINDS:
        raise InvalidSpec(f"unknown family kind {kind!r}")
    try:
        params = tuple(int(p) for p in rest.split(",")) if rest else ()
    except ValueError:
        raise InvalidSpec(f"bad family parameters {rest!r}") from None
    return FamilySpec(kind, params)


def generate(spec: FamilySpec) -> Graph:
    kind, p = spec.kind, spec.params
    if kind == "path":
        (n,) = _require(p, 1, spec)
        if n < 1:
            raise InvalidSpec("path needs n >= 1")
        return build_graph(n, [(i, i + 1) for i in range(n - 1)])
    if kind == "complete":
        (n,) = _require(p, 1, spec)
        if n < 1:
            raise InvalidSpec("complete graph needs n >= 1")
        return build_graph(n, itertools.combinations(range(n), 2))
    if kind == "star":
        (leaves,) = _require(p, 1, spec)
        if leaves < 0:
            raise InvalidSpec("star needs a nonnegative leaf count")
        return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
    if kind == "substar":
        branches = p
        if len(branches) < 1 or any(b < 1 for b in branches):
            raise InvalidSpec("subdivided star needs >= 1 branches of length >= 1")
        edges = []
        nxt = 1
        for b in branches:
            prev = 0
            for _ in range(b):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
        return build_graph(nxt, edges)
    if kind == "bistar":
        m, n = _require(p, 2, spec)
        if m < 0 or n < 0:
            raise InvalidSpec("bistar needs nonnegative leaf counts")
        edges = [(0, 1)]
        edges += [(0, 2 + i) for i in range(m)]
        edges += [(1, 2 + m + i) for i in range(n)]
        return build_graph(m + n + 2, edges)
    if kind == "triangle-tail":
        (m,) = _require(p, 1, spec)
        if m < 1:
            raise InvalidSpec("triangle-tail needs m >= 1")
        edges = [(0, 1), (0, 2), (1, 2)]
        prev = 2
        for i in range(3, m + 3):
            edges.append((prev, i))
            prev = i
        return build_graph(m + 3, edges)
    raise InvalidSpec(f"unknown family kind {kind!r}")


def _require(params, count, spec):
    if len(params) != count:
        raise InvalidSpec(f"{spec.kind} takes {count} parameter(s), got {len(params)}")
    return params


# -- canonical forms -----------------------------------------------------------


@lru_cache(maxsize=16)
def _all_perms(n: int) -> np.ndarray:
    return np.array(list(itertools.permutations(range(n))), dtype=np.int64)


def canonical_code(g: Graph) -> int:
    """Minimum adjacency-matrix bit string over all vertex permutations.

    Equal codes <=> isomorphic graphs; doubles as a dedup/cache key.
    """
    adj = np.zeros((g.n, g.n), dtype=np.uint8)
    for u, v in g.edges:
        adj[u, v] = 1
        adj[v, u] = 1
    return min_adjacency_code(adj, _all_perms(g.n))


def _code_to_graph(code: int, n: int) -> Graph:
    bits = [(code >> (n * n - 1 - i)) & 1 for i in range(n * n)]
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if bits[i * n + j]]
    return build_graph(n, edges)


# -- atlases --------------------------------------------------------------------


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of trees of order n (n <= 8).

    Grown by attaching a leaf to every vertex of every (n-1)-vertex tree and
    deduplicating by canonical code; exhaustive because deleting a leaf of any
    tree yields a tree one vertex smaller.
    """
    if not 1 <= n <= TREE_ATLAS_CAP:
        raise OrderTooLarge(f"tree atlas capped at order {TREE_ATLAS_CAP}")
    if n == 1:
        return (build_graph(1, []),)
    by_code: dict[int, Graph] = {}
    for smaller in enumerate_trees(n - 1):
        for v in range(smaller.n):
            cand = build_graph(n, list(smaller.edges) + [(v, n - 1)])
            code = canonical_code(cand)
            if code not in by_code:
                by_code[code] = cand
    out = tuple(by_code[c] for c in sorted(by_code))
    assert len(out) == TREE_COUNTS[n]
    return out


@lru_cache(maxsize=None)
def enumerate_connected_graphs(n: int) -> tuple[Graph, ...]:
    """One representative per isomorphism class of connected graphs (n <= 6)."""
    if not 1 <= n <= GRAPH_ATLAS_CAP:
        raise OrderTooLarge(f"graph atlas capped at order {GRAPH_ATLAS_CAP}")
    if n == 1:
        return (build_graph(1, []),)
    all_edges = list(itertools.combinations(range(n), 2))
    by_code: dict[int, Graph] = {}
    for mask in range(1 << len(all_edges)):
        if mask.bit_count() < n - 1:
            continue
        edges = [e for i, e in enumerate(all_edges) if mask >> i & 1]
        if not _spanning(n, edges):
            continue
        g = Graph(n, tuple(sorted(edges)))
        code = canonical_code(g)
        if code not in by_code:
            by_code[code] = g
    out = tuple(by_code[c] for c in sorted(by_code))
    assert len(out) == CONNECTED_COUNTS[n]
    return out


def _spanning(n: int, edges) -> bool:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    comps = n
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            comps -= 1
    return comps == 1
