"""Labeled-graph core: carriers, subgraph enumeration, isomorphism, text I/O.

Vertices are dense integers 0..n-1.  A Graph is immutable once built; the
expensive derived data (connected vertex sets of each order, the automorphism
group) is computed lazily and cached on the instance, so one carrier can be
shared across millions of labelings.
"""

from __future__ import annotations

import string
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    DisconnectedGraph,
    DuplicateEdge,
    FormatError,
    LengthMismatch,
    OrderOutOfRange,
    OrderTooLarge,
    SelfLoop,
    VertexOutOfRange,
)

AUTOMORPHISM_ORDER_CAP = 10


@dataclass(frozen=True)
class Graph:
    """Simple connected undirected graph.

    Use :func:`build_graph` instead of calling the constructor directly; the
    factory validates the edge list and normalizes edge order.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __hash__(self):
        return hash((self.n, self.edges))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj = self._cache.get("adj")
        if adj is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for u, v in self.edges:
                lists[u].append(v)
                lists[v].append(u)
            adj = tuple(tuple(sorted(l)) for l in lists)
            self._cache["adj"] = adj
        return adj

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adjacency)

    def is_tree(self) -> bool:
        return self.m == self.n - 1

    def leaves(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.n) if self.degree(v) == 1)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        es = self._cache.get("eset")
        if es is None:
            es = frozenset(self.edges)
            self._cache["eset"] = es
        return es

    def connected_sets(self, t: int) -> tuple[tuple[int, ...], ...]:
        """All vertex sets of size t inducing a connected subgraph, sorted."""
        key = ("csets", t)
        out = self._cache.get(key)
        if out is None:
            out = _connected_sets(self, t)
            self._cache[key] = out
        return out

    def all_connected_sets(self) -> tuple[tuple[int, ...], ...]:
        """Connected vertex sets of every order 1..n, ascending order then lex."""
        out = self._cache.get("all_csets")
        if out is None:
            out = tuple(s for t in range(1, self.n + 1) for s in self.connected_sets(t))
            self._cache["all_csets"] = out
        return out


@dataclass(frozen=True)
class Alphabet:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(self.names) < 1:
            raise ValueError("alphabet needs at least one symbol")
        if len(set(self.names)) != len(self.names):
            raise ValueError("alphabet symbol names must be distinct")

    @property
    def k(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise FormatError(f"unknown symbol name {name!r}") from None

    @staticmethod
    def default(k: int) -> "Alphabet":
        if k <= 26:
            return Alphabet(tuple(string.ascii_uppercase[:k]))
        return Alphabet(tuple(string.ascii_uppercase) + tuple(f"X{i}" for i in range(26, k)))


Labeling = tuple  # tuple[int, ...], one symbol index per vertex


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    alphabet: Alphabet
    labeling: tuple[int, ...]

    def __post_init__(self):
        if len(self.labeling) != self.graph.n:
            raise LengthMismatch(
                f"labeling length {len(self.labeling)} != order {self.graph.n}"
            )
        k = self.alphabet.k
        if any(not (0 <= s < k) for s in self.labeling):
            raise VertexOutOfRange("labeling uses a symbol index outside the alphabet")

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.alphabet.k

    def symbols(self) -> str:
        return "".join(self.alphabet.names[s] for s in self.labeling)


def labeled(graph: Graph, labeling: Sequence[int], k: Optional[int] = None) -> LabeledGraph:
    """Convenience constructor with a default alphabet."""
    kk = k if k is not None else (max(labeling) + 1 if labeling else 1)
    return LabeledGraph(graph, Alphabet.default(kk), tuple(labeling))


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Validate and build a simple connected graph on vertices 0..n-1."""
    if n < 1:
        raise OrderOutOfRange(f"graph order must be >= 1, got {n}")
    norm: list[tuple[int, int]] = []
    seen = set()
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise VertexOutOfRange(f"edge ({u},{v}) outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            raise DuplicateEdge(f"edge {e} given twice")
        seen.add(e)
        norm.append(e)
    g = Graph(n, tuple(sorted(norm)))
    if not _is_connected(g):
        raise DisconnectedGraph(f"graph on {n} vertices with {len(norm)} edges is not connected")
    return g


def _is_connected(g: Graph) -> bool:
    if g.n == 1:
        return True
    seen = {0}
    stack = [0]
    adj = g.adjacency
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == g.n


def _connected_sets(g: Graph, t: int) -> tuple[tuple[int, ...], ...]:
    """Duplicate-free enumeration of connected induced vertex sets of size t.

    Sets are grown from each anchor vertex a, adding only neighbors with index
    > a, so each set is produced exactly once for its minimum vertex; a
    visited table removes the remaining duplicates from different growth
    orders.
    """
    if not 1 <= t <= g.n:
        raise OrderOutOfRange(f"subgraph order {t} outside 1..{g.n}")
    if t == 1:
        return tuple((v,) for v in range(g.n))
    adj = g.adjacency
    result: list[tuple[int, ...]] = []
    for anchor in range(g.n):
        start = frozenset((anchor,))
        seen = {start}
        stack = [start]
        while stack:
            cur = stack.pop()
            if len(cur) == t:
                result.append(tuple(sorted(cur)))
                continue
            for u in cur:
                for w in adj[u]:
                    if w > anchor and w not in cur:
                        nxt = cur | {w}
                        if nxt not in seen:
                            seen.add(nxt)
                            stack.append(nxt)
    return tuple(sorted(result))


def connected_induced_subgraphs(g: Graph, t: int) -> list[tuple[int, ...]]:
    """Vertex sets of the connected induced subgraphs of order t."""
    return list(g.connected_sets(t))


def automorphism_group(g: Graph) -> list[tuple[int, ...]]:
    """All vertex permutations preserving the edge set, in lexicographic order.

    Brute-force backtracking over degree-compatible assignments; intended for
    carriers of order <= 10.
    """
    if g.n > AUTOMORPHISM_ORDER_CAP:
        raise OrderTooLarge(f"automorphism search capped at order {AUTOMORPHISM_ORDER_CAP}")
    auts = g._cache.get("auts")
    if auts is None:
        auts = tuple(sorted(_isomorphisms(g, g)))
        g._cache["auts"] = auts
    return list(auts)


def _refined_classes(g: Graph) -> list[int]:
    # color vertices by degree, refined twice by neighbor-color multisets
    colors = list(g.degrees)
    for _ in range(2):
        sig = [
            (colors[v], tuple(sorted(colors[w] for w in g.neighbors(v))))
            for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sig)))}
        colors = [palette[s] for s in sig]
    return colors


def _isomorphisms(g1: Graph, g2: Graph):
    """Yield all vertex bijections sigma with sigma(E1) = E2."""
    if g1.n != g2.n or g1.m != g2.m:
        return
    c1, c2 = _refined_classes(g1), _refined_classes(g2)
    if sorted(c1) != sorted(c2):
        return
    n = g1.n
    candidates = [[w for w in range(n) if c2[w] == c1[v]] for v in range(n)]
    sigma = [-1] * n
    used = [False] * n

    def extend(v: int):
        if v == n:
            yield tuple(sigma)
            return
        for w in candidates[v]:
            if used[w]:
                continue
            ok = True
            for u in g1.neighbors(v):
                if u < v and not g2.has_edge(sigma[u], w):
                    ok = False
                    break
            if ok:
                # non-edges must also map to non-edges
                deg_prefix = sum(1 for u in g1.neighbors(v) if u < v)
                mapped = sum(1 for u in range(v) if g2.has_edge(sigma[u], w))
                if mapped != deg_prefix:
                    continue
                sigma[v] = w
                used[w] = True
                yield from extend(v + 1)
                used[w] = False
                sigma[v] = -1

    yield from extend(0)


def graphs_isomorphic(g1: Graph, g2: Graph) -> bool:
    for _ in _isomorphisms(g1, g2):
        return True
    return False


def labelings_isomorphic(g: Graph, lab1: Sequence[int], lab2: Sequence[int]) -> bool:
    """True iff some automorphism sigma of g satisfies lab1 = lab2 o sigma."""
    if len(lab1) != g.n or len(lab2) != g.n:
        raise LengthMismatch("labeling length does not match the carrier order")
    lab1 = tuple(lab1)
    lab2 = tuple(lab2)
    if sorted(lab1) != sorted(lab2):
        return False
    for sigma in automorphism_group(g):
        if all(lab1[i] == lab2[sigma[i]] for i in range(g.n)):
            return True
    return False


def canonical_labeling(g: Graph, lab: Sequence[int]) -> tuple[int, ...]:
    """Lexicographic minimum of the labeling's orbit under the automorphisms.

    Falls back to the input (unchanged) above the brute-force order cap.
    """
    lab = tuple(lab)
    if g.n > AUTOMORPHISM_ORDER_CAP:
        return lab
    best = lab
    for sigma in automorphism_group(g):
        cand = tuple(lab[sigma[i]] for i in range(g.n))
        if cand < best:
            best = cand
    return best


def orbit_labelings(g: Graph, lab: Sequence[int]):
    """All distinct labelings isomorphic to lab (order <= cap)."""
    lab = tuple(lab)
    out = set()
    for sigma in automorphism_group(g):
        out.add(tuple(lab[sigma[i]] for i in range(g.n)))
    return sorted(out)


# -- text format --------------------------------------------------------------
#
#   graph <n> <m>
#   <u> <v>          (m lines, 0-based)
#   labels <s0> ... <s(n-1)>     (optional)


def serialize_graph(g: Graph, labeling: Optional[Sequence[int]] = None,
                    alphabet: Optional[Alphabet] = None) -> str:
    lines = [f"graph {g.n} {g.m}"]
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    if labeling is not None:
        ab = alphabet if alphabet is not None else Alphabet.default(max(labeling) + 1)
        lines.append("labels " + " ".join(ab.names[s] for s in labeling))
    return "\n".join(lines) + "\n"


def serialize_labeled(lg: LabeledGraph) -> str:
    return serialize_graph(lg.graph, lg.labeling, lg.alphabet)


def parse_graph(text: str, k: Optional[int] = None):
    """Parse the text format.

    Returns (graph, labeling_or_None, alphabet_or_None).  Whitespace-tolerant:
    blank lines are skipped and any run of whitespace separates tokens.  If k
    is given it fixes the alphabet size; otherwise the alphabet covers the
    highest default symbol seen.
    """
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not rows or rows[0][0] != "graph" or len(rows[0]) != 3:
        raise FormatError("first line must be 'graph <n> <m>'")
    try:
        n, m = int(rows[0][1]), int(rows[0][2])
    except ValueError:
        raise FormatError("non-integer order or size") from None
    if len(rows) < 1 + m:
        raise FormatError(f"expected {m} edge lines")
    edges = []
    for row in rows[1:1 + m]:
        if len(row) != 2:
            raise FormatError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    g = build_graph(n, edges)
    labeling = None
    alphabet = None
    rest = rows[1 + m:]
    if rest:
        if rest[0][0] != "labels" or len(rest) > 1:
            raise FormatError("trailing content must be a single 'labels' line")
        names = rest[0][1:]
        if len(names) != n:
            raise FormatError(f"expected {n} labels, got {len(names)}")
        big = Alphabet.default(26)
        idx = [big.index(name) for name in names]
        kk = k if k is not None else max(idx) + 1
        if max(idx) + 1 > kk:
            raise FormatError("label outside the requested alphabet")
        alphabet = Alphabet.default(kk)
        labeling = tuple(idx)
    return g, labeling, alphabet

