"""Constructive generators of equicomposable labeled graphs.

The central primitive is interleaving: a short labeled path stamped between
consecutive letters of a second path.  Reversing the second path preserves the
full composition multiset, which yields pairs (and, after gluing interleaved
paths at their centers, exponentially large families) of equicomposable yet
non-isomorphic labeled graphs.
"""

from __future__ import annotations

import itertools

from .catalog import generate, triangle_tail
from .errors import BitLengthMismatch, BudgetExceeded, EvenP2Length, InvalidSpec
from .graphs import Alphabet, LabeledGraph, build_graph

LabeledPath = tuple  # tuple[int, ...] of symbol indices, left to right

PATH_CLASS_BUDGET = 1 << 20


def reverse(p: LabeledPath) -> LabeledPath:
    return tuple(reversed(p))


def interleave(p1: LabeledPath, p2: LabeledPath) -> LabeledPath:
    """p1, then alternately one letter of p2 and another copy of p1.

    Length is (len(p2)+1)*len(p1) + len(p2); the j-th letter of p2 (1-based)
    lands at index j*(len(p1)+1) - 1.
    """
    if not p1:
        raise InvalidSpec("interleave needs a nonempty first path")
    out = list(p1)
    for a in p2:
        out.append(a)
        out.extend(p1)
    return tuple(out)


def bit_position(p1_len: int, j: int) -> int:
    """0-based index of the j-th (1-based) interleaved letter."""
    return j * (p1_len + 1) - 1


def _as_labeled_path_graph(labels: LabeledPath, k: int) -> LabeledGraph:
    g = build_graph(len(labels), [(i, i + 1) for i in range(len(labels) - 1)])
    return LabeledGraph(g, Alphabet.default(k), tuple(labels))


def _infer_k(*paths: LabeledPath) -> int:
    return max(max(p) for p in paths if p) + 1


def interleaved_pair(p1: LabeledPath, p2: LabeledPath,
                     k: int | None = None) -> tuple[LabeledGraph, LabeledGraph]:
    """The two interleavings of p1 by p2 and by reversed p2, as labeled paths."""
    if len(p2) < 1:
        raise InvalidSpec("interleaved_pair needs a nonempty second path")
    kk = k if k is not None else _infer_k(p1, p2)
    return (
        _as_labeled_path_graph(interleave(p1, p2), kk),
        _as_labeled_path_graph(interleave(p1, reverse(p2)), kk),
    )


def triangle_tail_pair(p: int) -> tuple[LabeledGraph, LabeledGraph]:
    """The two equicomposable binary labelings of the triangle with a 2p-tail.

    Tail vertices alternate labels; the first labeling paints both triangle
    twins like the even tail positions, the second splits them.
    """
    if p < 1:
        raise InvalidSpec("p must be >= 1")
    g = generate(triangle_tail(2 * p))
    A, B = 0, 1
    n = g.n  # 2p + 3; vertex 0,1 = twins, 2..n-1 = spine v_1..v_{2p+1}
    lab1 = [B] * n
    lab2 = [B] * n
    for i in range(0, p + 1):
        lab1[2 + 2 * i] = A       # v_{2i+1} odd spine positions
    lab2[0] = A                   # one twin
    for i in range(1, p + 1):
        lab2[1 + 2 * i] = A       # v_{2i} even spine positions
    ab = Alphabet.default(2)
    return LabeledGraph(g, ab, tuple(lab1)), LabeledGraph(g, ab, tuple(lab2))


def attach_at_center(gbase: LabeledGraph, x: int, p1: LabeledPath,
                     p2: LabeledPath) -> tuple[LabeledGraph, LabeledGraph]:
    """Join a labeled graph by one edge to the center letter of an interleaving.

    p2 must have odd length 2t-1; the attachment lands on its t-th letter
    inside the interleaved path.  Returns the pair built from p2 and from
    reversed p2 (equicomposable whenever len(p1) >= 2).
    """
    if len(p2) % 2 == 0 or not p2:
        raise EvenP2Length("the interleaved path needs an odd number of letters")
    if not 0 <= x < gbase.n:
        raise InvalidSpec(f"attachment vertex {x} outside the base graph")
    t = (len(p2) + 1) // 2
    center = bit_position(len(p1), t)
    k = max(_infer_k(p1, p2), gbase.k)

    def build(bits: LabeledPath) -> LabeledGraph:
        labels = interleave(p1, bits)
        L = len(labels)
        edges = [(i, i + 1) for i in range(L - 1)]
        edges += [(L + u, L + v) for u, v in gbase.graph.edges]
        edges.append((center, L + x))
        g = build_graph(L + gbase.n, edges)
        return LabeledGraph(g, Alphabet.default(k), tuple(labels) + gbase.labeling)

    return build(p2), build(reverse(p2))


def nonpalindromic_path_classes(k: int, m: int) -> list[LabeledPath]:
    """One representative per reversal class of non-palindromic length-m paths.

    Count is (k^m - k^ceil(m/2)) / 2.
    """
    if k < 2 or m < 2:
        raise InvalidSpec("need k >= 2 and m >= 2")
    if k ** m > PATH_CLASS_BUDGET:
        raise BudgetExceeded(f"k^m = {k ** m} exceeds the enumeration budget")
    reps = set()
    for s in itertools.product(range(k), repeat=m):
        r = tuple(reversed(s))
        if s == r:
            continue
        reps.add(min(s, r))
    return sorted(reps)


INNER_PATH = (0, 0, 1)  # the fixed length-3 interleaved path: A, A, B


def subdivided_star_family(k: int, m: int, bits) -> LabeledGraph:
    """One member of the equicomposable subdivided-star family.

    Every non-palindromic reversal class of length-m paths contributes one
    interleaved path (class path interleaved by A,A,B); all interleaved paths
    are glued at their center letters into one subdivided star.  Each choice
    bit flips its class's interleaved letters to B,A,A, producing 2^(#classes)
    pairwise equicomposable, pairwise non-isomorphic labelings of the same
    carrier on (2m+1)*(k^m - k^ceil(m/2)) + 1 vertices.
    """
    if m < 3:
        raise InvalidSpec("family construction needs m >= 3")
    classes = nonpalindromic_path_classes(k, m)
    bits = tuple(int(b) for b in bits)
    if len(bits) != len(classes):
        raise BitLengthMismatch(f"expected {len(classes)} choice bits, got {len(bits)}")
    center_pos = bit_position(m, 2)  # second letter of the inner path
    edges: list[tuple[int, int]] = []
    labels: list[int] = [INNER_PATH[1]]  # glued center keeps the middle letter
    nxt = 1

    def add_branch(seq):
        nonlocal nxt
        prev = 0
        for s in seq:
            labels.append(s)
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1

    for cls, bit in zip(classes, bits):
        inner = reverse(INNER_PATH) if bit else INNER_PATH
        path = interleave(cls, inner)
        assert path[center_pos] == INNER_PATH[1]
        add_branch(tuple(reversed(path[:center_pos])))  # left half, root to leaf
        add_branch(path[center_pos + 1:])               # right half
    g = build_graph(nxt, edges)
    return LabeledGraph(g, Alphabet.default(max(k, 2)), tuple(labels))


def family_size(k: int, m: int) -> int:
    return 1 << len(nonpalindromic_path_classes(k, m))
