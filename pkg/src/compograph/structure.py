"""Shape detectors for the carrier families, on arbitrary vertex numbering.

Each detector returns the named parts when the graph has the family's shape
and None otherwise; the reconstructors validate their hypotheses through
these before issuing any query.
"""

from __future__ import annotations

from typing import Optional

from .graphs import Graph


def star_parts(g: Graph) -> Optional[tuple[int, tuple[int, ...]]]:
    """(center, leaves) for stars; P_1 and P_2 count as degenerate stars."""
    if g.n == 1:
        return 0, ()
    if g.n == 2:
        return 0, (1,)
    centers = [v for v in range(g.n) if g.degree(v) == g.n - 1]
    if len(centers) != 1:
        return None
    c = centers[0]
    if any(g.degree(v) != 1 for v in range(g.n) if v != c):
        return None
    return c, tuple(v for v in range(g.n) if v != c)


def substar_parts(g: Graph) -> Optional[tuple[int, tuple[tuple[int, ...], ...]]]:
    """(center, branches) for subdivided stars with center degree >= 3.

    Branches are listed root-to-leaf, sorted by (length, vertex sequence).
    """
    if not g.is_tree():
        return None
    centers = [v for v in range(g.n) if g.degree(v) >= 3]
    if len(centers) != 1:
        return None
    c = centers[0]
    branches = []
    for first in g.neighbors(c):
        branch = [first]
        prev, cur = c, first
        while g.degree(cur) == 2:
            nxt = [w for w in g.neighbors(cur) if w != prev][0]
            branch.append(nxt)
            prev, cur = cur, nxt
        if g.degree(branch[-1]) != 1:
            return None  # ran into another high-degree vertex
        branches.append(tuple(branch))
    if 1 + sum(len(b) for b in branches) != g.n:
        return None
    return c, tuple(sorted(branches, key=lambda b: (len(b), b)))


def branch_lengths(branches: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    return tuple(sorted(len(b) for b in branches))


def twin_leaf_star_parts(g: Graph) -> Optional[tuple[int, int, tuple[int, ...]]]:
    """(u1, u2, spine) for subdivided stars with branch lengths (1, 1, m).

    u1 and u2 are the two pendant leaves on the center; spine is the center
    followed by the length-m branch, root to leaf.
    """
    parts = substar_parts(g)
    if parts is None:
        return None
    c, branches = parts
    if len(branches) != 3:
        return None
    lens = sorted(len(b) for b in branches)
    if lens[0] != 1 or lens[1] != 1:
        return None
    ordered = sorted(branches, key=lambda b: (len(b), b))
    u1, u2 = ordered[0][0], ordered[1][0]
    spine = (c,) + ordered[2]
    return u1, u2, spine


def bistar_parts(g: Graph) -> Optional[tuple[int, int, tuple[int, ...], tuple[int, ...]]]:
    """(u, v, leaves_u, leaves_v) for bistars with >= 1 leaf on each center."""
    if not g.is_tree() or g.n < 4:
        return None
    internal = [v for v in range(g.n) if g.degree(v) >= 2]
    if len(internal) != 2:
        return None
    u, v = internal
    if not g.has_edge(u, v):
        return None
    leaves_u = tuple(w for w in g.neighbors(u) if w != v)
    leaves_v = tuple(w for w in g.neighbors(v) if w != u)
    if 2 + len(leaves_u) + len(leaves_v) != g.n:
        return None
    return u, v, leaves_u, leaves_v


def triangle_tail_parts(g: Graph) -> Optional[tuple[int, int, tuple[int, ...]]]:
    """(u1, u2, spine) for a triangle with a pendant path.

    u1 < u2 are the two degree-2 triangle vertices; spine starts at the
    degree-3 triangle vertex and runs to the tail's end.
    """
    if g.m != g.n or g.n < 4:
        return None  # exactly one cycle
    # strip leaves to expose the cycle
    deg = list(g.degrees)
    alive = [True] * g.n
    queue = [v for v in range(g.n) if deg[v] == 1]
    while queue:
        v = queue.pop()
        alive[v] = False
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    cycle = [v for v in range(g.n) if alive[v]]
    if len(cycle) != 3:
        return None
    attach = [v for v in cycle if g.degree(v) == 3]
    twins = [v for v in cycle if g.degree(v) == 2]
    if len(attach) != 1 or len(twins) != 2:
        return None
    v1 = attach[0]
    tail_start = [w for w in g.neighbors(v1) if w not in twins]
    if len(tail_start) != 1:
        return None
    spine = [v1, tail_start[0]]
    prev, cur = v1, tail_start[0]
    while g.degree(cur) == 2:
        nxt = [w for w in g.neighbors(cur) if w != prev][0]
        spine.append(nxt)
        prev, cur = cur, nxt
    if g.degree(spine[-1]) != 1 or len(spine) != g.n - 2:
        return None
    return min(twins), max(twins), tuple(spine)


def path_labelings_isomorphic(lab1, lab2) -> bool:
    """Labeled isomorphism on a path carrier: equality up to reversal."""
    return tuple(lab1) == tuple(lab2) or tuple(lab1) == tuple(reversed(lab2))


def substar_labelings_isomorphic(g: Graph, lab1, lab2) -> bool:
    """Labeled isomorphism specialized to subdivided stars of any order.

    Automorphisms fix the center (degree >= 3) and permute equal-length
    branches, so two labelings agree up to isomorphism iff the center labels
    are equal and the per-length multisets of branch label strings match.
    """
    parts = substar_parts(g)
    if parts is None:
        raise ValueError("not a subdivided star")
    c, branches = parts

    def profile(lab):
        strings = sorted((len(b), tuple(lab[v] for v in b)) for b in branches)
        return lab[c], strings

    return profile(lab1) == profile(lab2)
