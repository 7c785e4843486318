"""Composition arithmetic and the query interface.

A composition is the count vector of symbols over a vertex set (one entry per
alphabet symbol, exact integers).  Queries against a hidden labeling come in
two kinds: the multiset query returns the multiset of compositions over all
connected induced subgraphs of a given order; the sum query returns their
coordinatewise sum.  The Oracle records every call in a ledger, including
repeats, so query-budget claims stay honest; reconstruction algorithms are
expected to cache answers locally.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NegativeCoordinate, OrderOutOfRange, VertexOutOfRange
from .graphs import LabeledGraph

Composition = tuple  # tuple[int, ...], length k


def comp_add(a: Sequence[int], b: Sequence[int]) -> Composition:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def comp_sub(a: Sequence[int], b: Sequence[int]) -> Composition:
    """Composition subtraction; negative coordinates are not allowed."""
    out = tuple(x - y for x, y in zip(a, b, strict=True))
    if any(c < 0 for c in out):
        raise NegativeCoordinate(f"{tuple(a)} - {tuple(b)} has a negative coordinate")
    return out


def comp_scale(c: int, a: Sequence[int]) -> Composition:
    return tuple(c * x for x in a)


def vec_sub(a: Sequence[int], b: Sequence[int]) -> tuple:
    """Plain signed vector difference (telescoping of sum answers)."""
    return tuple(x - y for x, y in zip(a, b, strict=True))


def unit_index(vec: Sequence[int]):
    """Index i if vec == e_i, else None."""
    if sum(vec) != 1 or any(x < 0 for x in vec):
        return None
    return max(range(len(vec)), key=vec.__getitem__)


def format_composition(c: Sequence[int]) -> str:
    return ",".join(str(x) for x in c)


@dataclass(frozen=True)
class CompositionMultiset:
    """Sorted (composition, multiplicity) pairs; the answer to a multiset query."""

    items: tuple[tuple[Composition, int], ...]

    @staticmethod
    def from_iterable(comps: Iterable[Sequence[int]]) -> "CompositionMultiset":
        counts = Counter(tuple(c) for c in comps)
        return CompositionMultiset(tuple(sorted(counts.items())))

    def multiplicity(self, comp: Sequence[int]) -> int:
        key = tuple(comp)
        for c, m in self.items:
            if c == key:
                return m
        return 0

    def total(self) -> int:
        return sum(m for _, m in self.items)

    def elements(self):
        for c, m in self.items:
            for _ in range(m):
                yield c

    def union(self, other: "CompositionMultiset") -> "CompositionMultiset":
        counts = Counter(dict(self.items))
        for c, m in other.items:
            counts[c] += m
        return CompositionMultiset(tuple(sorted(counts.items())))

    def coordinate_sum(self, k: int) -> tuple:
        out = [0] * k
        for c, m in self.items:
            for j in range(k):
                out[j] += m * c[j]
        return tuple(out)

    def fingerprint(self) -> bytes:
        return fingerprint(self)

    def __str__(self):
        return self.fingerprint().decode("ascii")


def fingerprint(m: CompositionMultiset) -> bytes:
    """Canonical byte serialization: 'multxc0,c1,...;' per pair, lex order."""
    if not m.items:
        return b"-"
    parts = []
    for comp, mult in m.items:
        parts.append(f"{mult}x{format_composition(comp)};")
    return "".join(parts).encode("ascii")


def composition_of(lg: LabeledGraph, vs: Iterable[int]) -> Composition:
    counts = [0] * lg.k
    for v in vs:
        if not 0 <= v < lg.n:
            raise VertexOutOfRange(f"vertex {v} outside 0..{lg.n - 1}")
        counts[lg.labeling[v]] += 1
    return tuple(counts)


def _multiset_answer(lg: LabeledGraph, t: int) -> CompositionMultiset:
    sets = lg.graph.connected_sets(t)
    return CompositionMultiset.from_iterable(composition_of(lg, s) for s in sets)


def _sum_answer(lg: LabeledGraph, t: int) -> Composition:
    out = [0] * lg.k
    for s in lg.graph.connected_sets(t):
        for v in s:
            out[lg.labeling[v]] += 1
    return tuple(out)


class Oracle:
    """Holds a hidden labeling; answers queries and counts every call.

    The carrier graph and alphabet are public knowledge; only the labeling is
    hidden.  Answer values for a given order are memoized internally, but the
    ledger increments on every call regardless.
    """

    def __init__(self, hidden: LabeledGraph):
        self._hidden = hidden
        self.graph = hidden.graph
        self.alphabet = hidden.alphabet
        self.counts: Counter = Counter()
        self.transcript: list[tuple[str, int, str]] = []
        self._memo_m: dict[int, CompositionMultiset] = {}
        self._memo_s: dict[int, Composition] = {}

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def k(self) -> int:
        return self.alphabet.k

    def _check_order(self, t: int):
        if not 1 <= t <= self.n:
            raise OrderOutOfRange(f"query order {t} outside 1..{self.n}")

    def multiset_query(self, t: int) -> CompositionMultiset:
        self._check_order(t)
        self.counts[("multiset", t)] += 1
        if t not in self._memo_m:
            self._memo_m[t] = _multiset_answer(self._hidden, t)
        ans = self._memo_m[t]
        self.transcript.append(("multiset", t, ans.fingerprint().decode("ascii")))
        return ans

    def sum_query(self, t: int) -> Composition:
        self._check_order(t)
        self.counts[("sum", t)] += 1
        if t not in self._memo_s:
            self._memo_s[t] = _sum_answer(self._hidden, t)
        ans = self._memo_s[t]
        self.transcript.append(("sum", t, format_composition(ans)))
        return ans

    def sum_calls(self) -> int:
        return sum(m for (kind, _), m in self.counts.items() if kind == "sum")

    def multiset_calls(self) -> int:
        return sum(m for (kind, _), m in self.counts.items() if kind == "multiset")

    def total_calls(self) -> int:
        return sum(self.counts.values())


def full_multiset(lg: LabeledGraph) -> CompositionMultiset:
    """Union of the multiset answers over every order 1..n (no ledger)."""
    return CompositionMultiset.from_iterable(
        composition_of(lg, s) for s in lg.graph.all_connected_sets()
    )


def full_sum(lg: LabeledGraph) -> tuple[Composition, ...]:
    """The tuple (S_1, ..., S_n) of coordinate sums per order (no ledger)."""
    return tuple(_sum_answer(lg, t) for t in range(1, lg.n + 1))
