"""Equicomposability tests and exhaustive confusability classification.

Two labelings of one carrier are equicomposable when their full composition
multisets agree, and sum-equicomposable when all per-order coordinate sums
agree.  classify() decides, for a small carrier, whether any two
non-isomorphic labelings collide under either fingerprint.

Completeness: a colliding pair shares its top-order composition, hence one
symbol multiset of size n, and a simultaneous symbol renaming preserves both
collisions and non-isomorphism.  The scan therefore ranges over the symbol
contents given by partitions of n (largest class first), enumerates every
arrangement of each content, and buckets arrangements by fingerprint; inside a
bucket, two distinct automorphism-orbit representatives are a witness.  Hash
buckets are confirmed by exact re-verification through the plain multiset
oracle before a witness is reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from itertools import permutations
from typing import Optional, Sequence

import numpy as np

from .errors import BudgetExceeded, CarrierMismatch
from .graphs import (
    Graph,
    LabeledGraph,
    automorphism_group,
    labeled,
    labelings_isomorphic,
)
from .kernels import (
    composition_code_limit_ok,
    decode_labeling,
    membership_arrays,
    orbit_min_codes,
    sorted_composition_codes,
    sum_vectors,
)
from .oracle import fingerprint, full_multiset, full_sum

SCAN_TREE_CAP = 8
SCAN_GRAPH_CAP = 6

VERDICT_SUM = "sum-reconstructable"
VERDICT_NOT_SUM = "reconstructable-not-sum"
VERDICT_CONFUSABLE = "confusable"


def _same_carrier(lg1: LabeledGraph, lg2: LabeledGraph):
    if lg1.graph != lg2.graph:
        raise CarrierMismatch("labelings live on different carrier graphs")
    if lg1.alphabet != lg2.alphabet:
        raise CarrierMismatch("labelings use different alphabets")


def equicomposable(lg1: LabeledGraph, lg2: LabeledGraph) -> bool:
    """True iff the full composition multisets coincide."""
    _same_carrier(lg1, lg2)
    return fingerprint(full_multiset(lg1)) == fingerprint(full_multiset(lg2))


def sum_equicomposable(lg1: LabeledGraph, lg2: LabeledGraph) -> bool:
    """True iff every per-order coordinate sum coincides."""
    _same_carrier(lg1, lg2)
    return full_sum(lg1) == full_sum(lg2)


@dataclass(frozen=True)
class WitnessPair:
    carrier: Graph
    lab1: tuple
    lab2: tuple
    kind: str  # "multiset" | "sum-only"
    shared_fingerprint: bytes


@dataclass(frozen=True)
class ScanEntry:
    carrier: Graph
    verdict: str
    multiset_witness: Optional[WitnessPair]
    sum_witness: Optional[WitnessPair]
    labelings_scanned: int
    elapsed: float


@dataclass(frozen=True)
class ScanReport:
    entries: tuple[ScanEntry, ...]

    def confusable(self) -> tuple[Graph, ...]:
        return tuple(e.carrier for e in self.entries if e.verdict == VERDICT_CONFUSABLE)


def _partitions(n: int):
    """Partitions of n in descending-lex order (each a descending tuple)."""

    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    yield from rec(n, n)


def _arrangements(partition: tuple[int, ...], n: int) -> np.ndarray:
    content = []
    for sym, cnt in enumerate(partition):
        content.extend([sym] * cnt)
    rows = sorted(set(permutations(content)))
    return np.array(rows, dtype=np.int64)



def classify(g: Graph, *, max_order: Optional[int] = None) -> ScanEntry:
    """Classify one carrier through exhaustive labeling-pair search.

    The default order guard is 8 for trees, 6 otherwise; pass max_order (or
    set RECON_BUDGET) to widen it at your own expense.
    """
    import os

    n = g.n
    if max_order is not None:
        cap = max_order
    else:
        env = os.environ.get("RECON_BUDGET")
        cap = int(env) if env else (SCAN_TREE_CAP if g.is_tree() else SCAN_GRAPH_CAP)
    if n > cap:
        raise BudgetExceeded(f"classify capped at order {cap} for this carrier")
    if not composition_code_limit_ok(n, n):
        raise BudgetExceeded("composition codes would overflow at this order")
    start = time.perf_counter()

    member, sizes = membership_arrays(g)
    perms = np.array(automorphism_group(g), dtype=np.int64)
    k = n  # a witness never needs more symbols than vertices

    best_multi: Optional[tuple[tuple, tuple]] = None
    best_sum: Optional[tuple[tuple, tuple]] = None
    scanned = 0
    for part in _partitions(n):
        labs = _arrangements(part, n)
        scanned += labs.shape[0]
        codes = sorted_composition_codes(member, labs, k)
        sums = sum_vectors(member, sizes, labs, k).reshape(labs.shape[0], -1)
        orbits = orbit_min_codes(labs, perms, k)
        rows = [tuple(r) for r in labs.tolist()]
        orbit_rep = {
            row: decode_labeling(int(code), n, k)
            for row, code in zip(rows, orbits.tolist())
        }
        best_multi = _scan_buckets(codes, rows, orbit_rep, best_multi)
        best_sum = _scan_buckets(sums, rows, orbit_rep, best_sum)

    multiset_witness = _verified_witness(g, best_multi, "multiset")
    sum_witness = _verified_witness(g, best_sum, "sum-only")
    if multiset_witness is not None:
        verdict = VERDICT_CONFUSABLE
    elif sum_witness is not None:
        verdict = VERDICT_NOT_SUM
    else:
        verdict = VERDICT_SUM
    return ScanEntry(
        carrier=g,
        verdict=verdict,
        multiset_witness=multiset_witness,
        sum_witness=sum_witness,
        labelings_scanned=scanned,
        elapsed=time.perf_counter() - start,
    )


def _scan_buckets(matrix: np.ndarray, rows, orbit_rep, best):
    """Group rows by fingerprint bytes; record the lex-least colliding pair."""
    buckets: dict[bytes, list] = {}
    data = np.ascontiguousarray(matrix)
    for i, row in enumerate(rows):
        buckets.setdefault(data[i].tobytes(), []).append(row)
    for members in buckets.values():
        if len(members) < 2:
            continue
        reps = sorted(set(orbit_rep[row] for row in members))
        if len(reps) >= 2:
            pair = (reps[0], reps[1])
            if best is None or pair < best:
                best = pair
    return best


def _verified_witness(g: Graph, pair, kind: str) -> Optional[WitnessPair]:
    """Re-check a kernel-found collision through the plain multiset oracle."""
    if pair is None:
        return None
    lab1, lab2 = pair
    k = max(max(lab1), max(lab2)) + 1
    lg1, lg2 = labeled(g, lab1, k=k), labeled(g, lab2, k=k)
    if labelings_isomorphic(g, lab1, lab2):
        raise AssertionError("witness pair collapsed to isomorphic labelings")
    if not sum_equicomposable(lg1, lg2):
        raise AssertionError("sum collision failed exact re-verification")
    if kind == "multiset":
        if not equicomposable(lg1, lg2):
            raise AssertionError("multiset collision failed exact re-verification")
        shared = fingerprint(full_multiset(lg1))
    else:
        shared = _sum_fingerprint(lg1)
    return WitnessPair(carrier=g, lab1=lab1, lab2=lab2, kind=kind, shared_fingerprint=shared)


def _sum_fingerprint(lg: LabeledGraph) -> bytes:
    return b"|".join(
        ",".join(str(x) for x in vec).encode("ascii") for vec in full_sum(lg)
    )


def survey(carriers: Sequence[Graph], *, max_order: Optional[int] = None) -> ScanReport:
    """classify() over a list, in the given order."""
    return ScanReport(tuple(classify(g, max_order=max_order) for g in carriers))
