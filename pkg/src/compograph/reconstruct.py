"""Reconstruction algorithms: recover a hidden labeling through oracle queries.

Each dedicated algorithm validates its carrier's shape first, then issues the
minimum number of queries its derivation needs.  Sum answers are requested
through the sum-query interface even inside multiset-based algorithms, so the
ledger's per-kind counts match the stated budgets; every algorithm caches
answers locally because the ledger charges repeats.

Vector conventions: sum answers and their telescoped differences are plain
signed integer tuples; a single vertex label appears as a unit vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, isqrt
from typing import Optional

from .errors import (
    AlphabetTooLarge,
    BudgetExceeded,
    CollapseContradiction,
    DegreeTooSmall,
    EvenTail,
    NoUniqueNonzero,
    OracleInconsistent,
    StructureMismatch,
)
from .graphs import AUTOMORPHISM_ORDER_CAP, Graph, canonical_labeling
from .oracle import (
    CompositionMultiset,
    Oracle,
    comp_sub,
    vec_sub,
    unit_index,
)
from .structure import (
    bistar_parts,
    star_parts,
    substar_parts,
    triangle_tail_parts,
    twin_leaf_star_parts,
)

BRUTE_TREE_CAP = 12
BRUTE_GRAPH_CAP = 8


def _env_budget() -> Optional[int]:
    import os

    raw = os.environ.get("RECON_BUDGET")
    return int(raw) if raw else None


@dataclass(frozen=True)
class SplitLI:
    """Compositions of the leaves (L) and internal vertices (I) of a tree."""

    L: tuple
    I: tuple
    leaf_count: int


@dataclass
class ReconstructionResult:
    labeling: tuple
    status: str  # "unique" | "ambiguous"
    witnesses: tuple = ()
    sum_queries: int = 0
    multiset_queries: int = 0
    transcript: tuple = ()


def _finish(oracle: Oracle, labeling, status="unique", witnesses=()) -> ReconstructionResult:
    lab = tuple(labeling)
    if oracle.n <= AUTOMORPHISM_ORDER_CAP:
        lab = canonical_labeling(oracle.graph, lab)
        witnesses = tuple(canonical_labeling(oracle.graph, w) for w in witnesses)
    return ReconstructionResult(
        labeling=lab,
        status=status,
        witnesses=tuple(witnesses),
        sum_queries=oracle.sum_calls(),
        multiset_queries=oracle.multiset_calls(),
        transcript=tuple(oracle.transcript),
    )


class _SumCache:
    """Local cache over the sum-query interface (the ledger counts repeats)."""

    def __init__(self, oracle: Oracle):
        self.oracle = oracle
        self._memo: dict[int, tuple] = {}

    def __call__(self, t: int) -> tuple:
        if t not in self._memo:
            self._memo[t] = self.oracle.sum_query(t)
        return self._memo[t]


def _unit(vec, context: str) -> int:
    idx = unit_index(vec)
    if idx is None:
        raise OracleInconsistent(f"{context}: expected a unit vector, got {tuple(vec)}")
    return idx


def _e(k: int, j: int, c: int = 1) -> tuple:
    out = [0] * k
    out[j] = c
    return tuple(out)


def _vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


# -- leaves/internal split and the center lemma --------------------------------


def split_leaves_internal(oracle: Oracle, sums: Optional[_SumCache] = None) -> SplitLI:
    """Split the total composition of a tree into leaf and internal parts.

    Two sum queries: the top-order answer lists all labels; the order-(n-1)
    answer sums the n-minus-a-leaf subtrees, counting each leaf one time less
    than each internal vertex.
    """
    g = oracle.graph
    if not g.is_tree() or g.n < 2:
        raise StructureMismatch("leaf/internal split needs a tree of order >= 2")
    sums = sums or _SumCache(oracle)
    total = sums(g.n)
    below = sums(g.n - 1)
    ell = len(g.leaves())
    internal = comp_sub(below, tuple((ell - 1) * x for x in total))
    leaves = comp_sub(total, internal)
    return SplitLI(L=leaves, I=internal, leaf_count=ell)


def center_label(oracle: Oracle, split: Optional[SplitLI] = None,
                 sums: Optional[_SumCache] = None) -> int:
    """Label of the center of a subdivided star with maximum degree >= 3.

    One sum query beyond the split: in the order-2 answer each vertex is
    counted by its degree, so subtracting the leaves once and the internal
    vertices twice leaves (degree-2) copies of the center label only.
    """
    g = oracle.graph
    parts = substar_parts(g)
    if parts is None:
        raise DegreeTooSmall("center lemma needs a subdivided star with a degree >= 3 center")
    sums = sums or _SumCache(oracle)
    if split is None:
        split = split_leaves_internal(oracle, sums)
    s2 = sums(2)
    residue = vec_sub(vec_sub(s2, split.L), tuple(2 * x for x in split.I))
    nonzero = [j for j, x in enumerate(residue) if x != 0]
    center_degree = g.degree(parts[0])
    if len(nonzero) != 1 or residue[nonzero[0]] != center_degree - 2:
        raise NoUniqueNonzero(f"center residue {residue} is not (degree-2) times a unit")
    return nonzero[0]


# -- stars ----------------------------------------------------------------------


def reconstruct_star(oracle: Oracle) -> ReconstructionResult:
    """Stars recover from the leaf/internal split alone: two sum queries."""
    g = oracle.graph
    parts = star_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a star")
    center, leaves = parts
    k = oracle.k
    if g.n == 1:
        total = oracle.sum_query(1)
        return _finish(oracle, (_unit(total, "single vertex"),))
    split = split_leaves_internal(oracle)
    lab = [0] * g.n
    if g.n == 2:
        # both endpoints are twins; deterministic split of the two labels
        pair = _expand(split.L)
        lab[0], lab[1] = pair[0], pair[1]
        return _finish(oracle, lab)
    lab[center] = _unit(split.I, "star center")
    for v, sym in zip(leaves, _expand(split.L)):
        lab[v] = sym
    return _finish(oracle, lab)


def _expand(comp) -> list[int]:
    """Composition to a sorted list of symbol indices."""
    out = []
    for j, c in enumerate(comp):
        if c < 0:
            raise OracleInconsistent(f"negative multiplicity in {tuple(comp)}")
        out.extend([j] * c)
    return out


def reconstruct_once_subdivided_star(oracle: Oracle) -> ReconstructionResult:
    """Stars whose edges are subdivided at most once, over a 2-letter alphabet.

    Four queries: the split (2), the center lemma (1), and one multiset query
    at order n-2.  Each order-(n-2) subgraph omits either two leaves or one
    whole length-2 branch, so subtracting each answer from the total and
    removing the known leaf pairs isolates the branch compositions; the
    internal-composition balance then orients the mixed branches.
    """
    g = oracle.graph
    if oracle.k != 2:
        raise AlphabetTooLarge("this method needs a binary alphabet")
    parts = substar_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a subdivided star with a center")
    center, branches = parts
    if any(len(b) > 2 for b in branches):
        raise StructureMismatch("a branch is subdivided more than once")
    if all(len(b) == 1 for b in branches):
        return reconstruct_star(oracle)

    sums = _SumCache(oracle)
    split = split_leaves_internal(oracle, sums)
    c_sym = center_label(oracle, split, sums)
    total = sums(g.n)
    answer = oracle.multiset_query(g.n - 2)

    # R = all (total - X): leaf pairs plus whole length-2 branches
    from collections import Counter

    R = Counter()
    for comp, mult in answer.items:
        R[comp_sub(total, comp)] += mult
    a, b = split.L  # leaf counts per symbol
    leaf_pairs = {(2, 0): comb(a, 2), (1, 1): a * b, (0, 2): comb(b, 2)}
    for comp, mult in leaf_pairs.items():
        if mult:
            R[comp] -= mult
            if R[comp] < 0:
                raise OracleInconsistent("more leaf pairs than order-(n-2) subgraphs")
    r_aa, r_ab, r_bb = R.get((2, 0), 0), R.get((1, 1), 0), R.get((0, 2), 0)
    long_branches = [x for x in branches if len(x) == 2]
    if r_aa + r_ab + r_bb != len(long_branches):
        raise OracleInconsistent("branch compositions do not cover the length-2 branches")

    # internal vertices = center + one inner vertex per length-2 branch
    inner = comp_sub(split.I, _e(2, c_sym))
    mixed_inner_a = inner[0] - r_aa
    if not 0 <= mixed_inner_a <= r_ab:
        raise OracleInconsistent("mixed-branch orientation count out of range")

    lab = [0] * g.n
    lab[center] = c_sym
    # leaves on the center: total minus center minus the length-2 branches
    short = comp_sub(total, _e(2, c_sym))
    short = comp_sub(short, (2 * r_aa + r_ab, 2 * r_bb + r_ab))
    short_syms = _expand(short)
    short_vs = [x[0] for x in branches if len(x) == 1]
    if len(short_syms) != len(short_vs):
        raise OracleInconsistent("pendant-leaf composition does not match the carrier")
    for v, sym in zip(short_vs, short_syms):
        lab[v] = sym
    # orient length-2 branches: AA / BB fixed, then the AB split by inner count
    assignments = [(0, 0)] * r_aa + [(1, 1)] * r_bb
    assignments += [(0, 1)] * mixed_inner_a + [(1, 0)] * (r_ab - mixed_inner_a)
    for (inner_sym, leaf_sym), branch in zip(assignments, long_branches):
        lab[branch[0]] = inner_sym
        lab[branch[1]] = leaf_sym
    return _finish(oracle, lab)


# -- bistars --------------------------------------------------------------------


def _bistar_assemble(g, u, v, leaves_u, leaves_v, u_sym, v_sym, mult_u, mult_v):
    lab = [0] * g.n
    lab[u], lab[v] = u_sym, v_sym
    for w, sym in zip(leaves_u, _expand(mult_u)):
        lab[w] = sym
    for w, sym in zip(leaves_v, _expand(mult_v)):
        lab[w] = sym
    return lab


def reconstruct_bistar_k2(oracle: Oracle) -> ReconstructionResult:
    """Bistars over a binary alphabet in three queries.

    After the split, equal center labels need the order-3 multiset (the counts
    of the all-center-symbol and one-off compositions pin down the per-side
    leaf counts through a quadratic identity); distinct center labels need only
    the order-2 multiset.
    """
    if oracle.k != 2:
        raise AlphabetTooLarge("use reconstruct_bistar for k > 2")
    g = oracle.graph
    parts = bistar_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a bistar")
    u, v, leaves_u, leaves_v = parts
    lu, lv = len(leaves_u), len(leaves_v)

    sums = _SumCache(oracle)
    split = split_leaves_internal(oracle, sums)
    total = sums(g.n)

    if split.I in ((2, 0), (0, 2)):
        A = 0 if split.I == (2, 0) else 1  # the shared center symbol
        B = 1 - A
        alpha, beta = total[A], total[B]
        m3 = oracle.multiset_query(3)
        x = m3.multiplicity(_e(2, A, 3))
        y = m3.multiplicity(_vadd(_e(2, A, 2), _e(2, B)))
        if x == 0:
            a_u = a_v = 0
        elif y == 0:
            a_u, a_v = lu, lv
        elif lu != lv:
            num = y - beta - alpha * (lv + 1) + 2 * (lv + x + 1)
            if num % (lu - lv) != 0:
                raise OracleInconsistent("per-side count is not an integer")
            a_u = num // (lu - lv)
            a_v = alpha - 2 - a_u
        else:
            # symmetric halves: the pair {a_u, a_v} solves s, q below
            s = alpha - 2
            sq = 2 * x - alpha + 2  # a_u^2 + a_v^2
            q2 = s * s - sq
            if q2 % 2 != 0:
                raise OracleInconsistent("inconsistent order-3 counts")
            q = q2 // 2
            disc = s * s - 4 * q
            r = isqrt(max(disc, 0))
            if disc < 0 or r * r != disc or (s + r) % 2 != 0:
                raise OracleInconsistent("per-side counts are not integers")
            a_u = (s + r) // 2
            a_v = s - a_u
        if not (0 <= a_u <= lu and 0 <= a_v <= lv):
            raise OracleInconsistent("per-side counts out of range")
        mult_u = _e(2, A, a_u)
        mult_u = _vadd(mult_u, _e(2, B, lu - a_u))
        mult_v = _vadd(_e(2, A, a_v), _e(2, B, lv - a_v))
        lab = _bistar_assemble(g, u, v, leaves_u, leaves_v, A, A, mult_u, mult_v)
        return _finish(oracle, lab)

    # distinct center labels: adjacent pairs already separate the two sides
    A, B = 0, 1
    alpha, beta = total[A], total[B]
    m2 = oracle.multiset_query(2)
    a = m2.multiplicity((2, 0))  # A-leaves on the A-center
    b = m2.multiplicity((0, 2))  # B-leaves on the B-center
    x = beta - b - 1  # B-leaves on the A-center
    y = alpha - a - 1  # A-leaves on the B-center
    if min(a, b, x, y) < 0:
        raise OracleInconsistent("negative leaf count")
    ell_a, ell_b = a + x, b + y
    if ell_a == lu:
        u_sym, v_sym = A, B
        mult_u, mult_v = (a, x), (y, b)
    elif ell_a == lv:
        u_sym, v_sym = B, A
        mult_u, mult_v = (y, b), (a, x)
    else:
        raise OracleInconsistent("side sizes do not match the carrier")
    lab = _bistar_assemble(g, u, v, leaves_u, leaves_v, u_sym, v_sym, mult_u, mult_v)
    return _finish(oracle, lab)


def reconstruct_bistar(oracle: Oracle) -> ReconstructionResult:
    """Bistars over any alphabet of size >= 2.

    Distinct center labels: one order-2 multiset query sorts every leaf to its
    side (three queries total).  Equal center labels: descend from order n
    looking for the largest composition holding exactly one center symbol (one
    whole side plus its center); the order-3 counts then fix which side count
    belongs to the larger center, and, when the two sides hold equally many
    but different foreign symbols, the one-center-plus-two-leaves
    multiplicities referee the assignment.
    """
    g = oracle.graph
    k = oracle.k
    if k < 2:
        raise AlphabetTooLarge("reconstruction needs k >= 2")
    parts = bistar_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a bistar")
    u, v, leaves_u, leaves_v = parts
    lu, lv = len(leaves_u), len(leaves_v)

    sums = _SumCache(oracle)
    split = split_leaves_internal(oracle, sums)
    total = sums(g.n)
    centers = _expand(split.I)

    if centers[0] != centers[1]:
        X, Y = centers  # labels of the two centers, sides unknown
        m2 = oracle.multiset_query(2)
        x_tot, y_tot = total[X], total[Y]
        x2 = m2.multiplicity(_e(k, X, 2))
        y2 = m2.multiplicity(_e(k, Y, 2))
        # per-symbol leaf counts next to each center, for symbols other than X, Y
        side_x = {z: m2.multiplicity(_vadd(_e(k, X), _e(k, z)))
                  for z in range(k) if z not in (X, Y)}
        side_y = {z: m2.multiplicity(_vadd(_e(k, Y), _e(k, z)))
                  for z in range(k) if z not in (X, Y)}
        beta = x_tot - x2 - 1  # X-leaves on the Y side
        alpha = y_tot - y2 - 1  # Y-leaves on the X side
        if min(alpha, beta) < 0:
            raise OracleInconsistent("negative cross count")
        ell_x = x2 + alpha + sum(side_x.values())
        ell_y = y2 + beta + sum(side_y.values())
        comp_x = [0] * k
        comp_x[X] = x2
        comp_x[Y] = alpha
        for z, c in side_x.items():
            comp_x[z] = c
        comp_y = [0] * k
        comp_y[Y] = y2
        comp_y[X] = beta
        for z, c in side_y.items():
            comp_y[z] = c
        if ell_x == lu:
            lab = _bistar_assemble(g, u, v, leaves_u, leaves_v, X, Y, comp_x, comp_y)
        elif ell_x == lv:
            lab = _bistar_assemble(g, u, v, leaves_u, leaves_v, Y, X, comp_y, comp_x)
        else:
            raise OracleInconsistent("side sizes do not match the carrier")
        return _finish(oracle, lab)

    # equal center labels
    A = centers[0]
    if total == _e(k, A, g.n):
        return _finish(oracle, [A] * g.n)

    multisets: dict[int, CompositionMultiset] = {}

    def m_query(t: int) -> CompositionMultiset:
        if t not in multisets:
            if len(multisets) >= g.n + 1:
                raise BudgetExceeded("descending search exceeded the query cap")
            multisets[t] = oracle.multiset_query(t)
        return multisets[t]

    found = None
    for i in range(g.n, 0, -1):
        hits = [c for c, _ in m_query(i).items if c[A] == 1]
        if hits:
            found = sorted(hits)[0]
            break
    if found is None:
        raise OracleInconsistent("no composition with exactly one center symbol")
    side1 = comp_sub(found, _e(k, A))
    non_a_total = comp_sub(total, _e(k, A, total[A]))
    side2 = comp_sub(non_a_total, side1)
    b1, b2 = sum(side1), sum(side2)
    alpha = total[A]

    def assemble(comp_u_foreign, comp_v_foreign):
        cu = sum(comp_u_foreign)
        cv = sum(comp_v_foreign)
        au, av = lu - cu, lv - cv
        if au < 0 or av < 0 or au + av != alpha - 2:
            raise OracleInconsistent("side composition does not fit the carrier")
        mu = _vadd(comp_u_foreign, _e(k, A, au))
        mv = _vadd(comp_v_foreign, _e(k, A, av))
        return _bistar_assemble(g, u, v, leaves_u, leaves_v, A, A, mu, mv)

    if lu == lv:
        return _finish(oracle, assemble(side1, side2))

    # orient so the v role is the larger side
    if lu > lv:
        u, v = v, u
        leaves_u, leaves_v = leaves_v, leaves_u
        lu, lv = lv, lu
    ell = lv - lu
    m3 = m_query(3)
    a3 = m3.multiplicity(_e(k, A, 3))
    num = (-2 * a3 + alpha - 2 + b1 * b1 + b2 * b2 + lu * lu + lv * lv
           - 2 * (b1 + b2) * lu)
    if num % (2 * ell) != 0:
        raise OracleInconsistent("foreign-count formula is not an integer")
    Bv = num // (2 * ell)
    Bu = b1 + b2 - Bv
    if {Bu, Bv} != {b1, b2}:
        raise OracleInconsistent("foreign counts disagree with the side compositions")

    if b1 != b2:
        comp_v = side1 if sum(side1) == Bv else side2
        comp_u = side2 if comp_v is side1 else side1
        return _finish(oracle, assemble(comp_u, comp_v))

    if side1 == side2:
        return _finish(oracle, assemble(side1, side2))

    # equal counts, different side contents: the one-center-plus-two-leaves
    # compositions of order 3 depend on the assignment because lu != lv
    au_h, av_h = lu - b1, lv - b2
    feasible = []
    for comp_u, comp_v in ((side1, side2), (side2, side1)):
        ok = True
        for z in range(k):
            if z == A:
                continue
            predicted = au_h * comp_u[z] + av_h * comp_v[z] + comp_u[z] + comp_v[z]
            observed = m3.multiplicity(_vadd(_e(k, A, 2), _e(k, z)))
            if predicted != observed:
                ok = False
                break
        if ok:
            feasible.append((comp_u, comp_v))
    if not feasible:
        raise OracleInconsistent("neither side assignment matches the order-3 counts")
    comp_u, comp_v = feasible[0]
    return _finish(oracle, assemble(comp_u, comp_v))


# -- the spine solver for the telescoping algorithms ----------------------------


class _SpineSolver:
    """Tracks spine labels that may be pinned down only up to a two-symbol swap.

    Entries are concrete symbol indices or the tokens "lo"/"hi" naming the two
    alternating values of an unresolved middle section.  Every equation step
    either keeps the symmetry (both swap assignments fit, the target joins the
    alternation), collapses it (exactly one fits: all symbolic entries become
    concrete), or exposes an inconsistent oracle.
    """

    def __init__(self, k: int, length: int):
        self.k = k
        self.labels: list = [None] * (length + 1)  # 1-based
        self.pair: Optional[tuple[int, int]] = None
        self.resolved = True  # no symbolic entries yet

    def set_concrete(self, j: int, sym: int):
        self.labels[j] = sym

    def start_alternation(self, pair: tuple[int, int]):
        self.pair = pair
        self.resolved = False

    def known(self, j: int) -> bool:
        return self.labels[j] is not None

    def concrete(self, j: int) -> int:
        sym = self.labels[j]
        if isinstance(sym, str):
            raise CollapseContradiction("label still symbolic after resolution")
        return sym

    def _materialize(self, assignment: dict):
        for j, val in enumerate(self.labels):
            if isinstance(val, str):
                self.labels[j] = assignment[val]
        self.resolved = True

    def _split_terms(self, terms):
        concrete = [0] * self.k
        c_lo = c_hi = 0
        for coeff, j in terms:
            val = self.labels[j]
            if val is None:
                raise CollapseContradiction(f"spine position {j} used before it is known")
            if val == "lo":
                c_lo += coeff
            elif val == "hi":
                c_hi += coeff
            else:
                concrete[val] += coeff
        return tuple(concrete), c_lo, c_hi

    def solve(self, measured, terms, target_j: int, target_coeff: int, context: str):
        """measured = sum(coeff * V_j over terms) + target_coeff * V_target."""
        concrete, c_lo, c_hi = self._split_terms(terms)
        residual = vec_sub(measured, concrete)
        if self.resolved:
            vec = residual
            if target_coeff < 0:
                vec = tuple(-x for x in vec)
            self.set_concrete(target_j, _unit(vec, context))
            return
        x, y = self.pair
        feasible = []
        for assignment in ({"lo": x, "hi": y}, {"lo": y, "hi": x}):
            vec = vec_sub(residual, _e(self.k, assignment["lo"], c_lo))
            vec = vec_sub(vec, _e(self.k, assignment["hi"], c_hi))
            if target_coeff < 0:
                vec = tuple(-v for v in vec)
            idx = unit_index(vec)
            if idx is not None:
                feasible.append((assignment, idx))
        if len(feasible) == 2:
            (a1, s1), (a2, s2) = feasible
            tokens = [tok for tok in ("lo", "hi") if a1[tok] == s1 and a2[tok] == s2]
            if tokens:
                self.labels[target_j] = tokens[0]
            elif s1 == s2:
                self.set_concrete(target_j, s1)
            else:
                raise CollapseContradiction(f"{context}: ambiguous non-symmetric step")
            return
        if len(feasible) == 1:
            assignment, sym = feasible[0]
            self._materialize(assignment)
            self.set_concrete(target_j, sym)
            return
        raise CollapseContradiction(f"{context}: no feasible swap assignment")

    def resolve_with(self, measured, terms, context: str):
        """Fix the swap using an equation with no new target."""
        if self.resolved:
            return
        concrete, c_lo, c_hi = self._split_terms(terms)
        residual = vec_sub(measured, concrete)
        x, y = self.pair
        feasible = []
        for assignment in ({"lo": x, "hi": y}, {"lo": y, "hi": x}):
            vec = vec_sub(residual, _e(self.k, assignment["lo"], c_lo))
            vec = vec_sub(vec, _e(self.k, assignment["hi"], c_hi))
            if all(v == 0 for v in vec):
                feasible.append(assignment)
        if len(feasible) != 1:
            raise CollapseContradiction(f"{context}: resolution is not unique")
        self._materialize(feasible[0])


def _decode_one_two(vec, k: int, context: str) -> tuple[int, int]:
    """Decode e_a + 2*e_b into (a, b); a == b gives 3*e_a."""
    nz = [(j, c) for j, c in enumerate(vec) if c != 0]
    if len(nz) == 1 and nz[0][1] == 3:
        return nz[0][0], nz[0][0]
    if len(nz) == 2:
        counts = sorted(nz, key=lambda t: t[1])
        if counts[0][1] == 1 and counts[1][1] == 2:
            return counts[0][0], counts[1][0]
    raise OracleInconsistent(f"{context}: cannot decode {tuple(vec)} as one+double")


# -- twin-leaf subdivided stars (branch lengths 1, 1, m) -------------------------


def reconstruct_twin_leaf_star(oracle: Oracle) -> ReconstructionResult:
    """Subdivided stars with two pendant leaves on the center: sum queries only.

    The split and center lemma fix the center; consecutive-order differences
    telescope along the spine.  For even spines the middle three labels can
    tie in a two-symbol alternation that either collapses at some step or is
    resolved at the end against the total composition.
    """
    g = oracle.graph
    k = oracle.k
    star = star_parts(g)
    if star is not None:
        return reconstruct_star(oracle)
    parts = twin_leaf_star_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a twin-leaf subdivided star")
    u1, u2, spine = parts
    m = len(spine) - 1  # spine = center v_1 .. v_{m+1}
    n = g.n

    sums = _SumCache(oracle)
    split = split_leaves_internal(oracle, sums)
    v1 = center_label(oracle, split, sums)

    if m == 2:
        v2 = _unit(comp_sub(split.I, _e(k, v1)), "inner vertex")
        rest = vec_sub(vec_sub(sums(3), _e(k, v1, 4)), _e(k, v2, 3))
        twins = comp_sub(rest, split.L)
        tail = _unit(comp_sub(split.L, twins), "spine end")
        return _finish(oracle, _assemble_spine(g, u1, u2, spine, [v1, v2, tail], twins, k))

    solver = _SpineSolver(k, m + 1)
    solver.set_concrete(1, v1)
    if m % 2 == 1:
        p = (m + 1) // 2
        if p == 2:
            v3 = _unit(vec_sub(sums(4), sums(3)), "fourth spine label")
            v2 = _unit(comp_sub(comp_sub(split.I, _e(k, v1)), _e(k, v3)), "second spine label")
            rest = vec_sub(vec_sub(sums(3), sums(2)), _vadd(_e(k, v1), _e(k, v2, 2)))
            twins = tuple(rest)
            if any(c < 0 for c in twins) or sum(twins) != 2:
                raise OracleInconsistent("twin composition out of range")
            tail = _unit(comp_sub(split.L, twins), "spine end")
            labels = [v1, v2, v3, tail]
            return _finish(oracle, _assemble_spine(g, u1, u2, spine, labels, twins, k))
        _run_odd_spine(solver, sums, p, k)
    else:
        p = m // 2
        if p == 2:
            _twin_leaf_even4(solver, sums, split, k, v1)
        else:
            _run_even_spine(solver, sums, split, p, k, n)
    # spine ends: remaining leaf labels belong to the twins
    spine_labels = [solver.concrete(j) for j in range(1, m + 2)]
    twins = comp_sub(split.L, _e(k, spine_labels[-1]))
    return _finish(oracle, _assemble_spine(g, u1, u2, spine, spine_labels, twins, k))


def _assemble_spine(g, u1, u2, spine, spine_labels, twins, k):
    if sum(twins) != 2 or any(c < 0 for c in twins):
        raise OracleInconsistent(f"twin composition {tuple(twins)} is not two labels")
    lab = [0] * g.n
    for v, sym in zip(spine, spine_labels):
        lab[v] = sym
    t = _expand(twins)
    lab[min(u1, u2)], lab[max(u1, u2)] = t[0], t[1]
    return lab


def _eqA_odd(sums, solver, p, k, i, target_j):
    # S_{i+1} - S_i = V_{i-1} + 2 V_i + sum_{j=i+1}^{2p-i} V_j
    measured = vec_sub(sums(i + 1), sums(i))
    terms = [(2, i)] + [(1, j) for j in range(i + 1, 2 * p - i + 1)]
    solver.solve(measured, terms, target_j, 1, f"odd spine step i={i}")


def _eqB_odd(sums, solver, p, k, i):
    # S_{p+i} - S_{p+i+1} = sum_{j=p-i+1}^{p+i-2} V_j - V_{p+i}
    measured = vec_sub(sums(p + i), sums(p + i + 1))
    terms = [(1, j) for j in range(p - i + 1, p + i - 1)]
    solver.solve(measured, terms, p + i, -1, f"odd spine step p+{i}")


def _run_odd_spine(solver, sums, p, k):
    """Spine of 2p vertices (plus ends handled by the caller), p >= 3."""
    base = vec_sub(sums(p + 1), sums(p))  # V_{p-1} + 2 V_p
    low, mid = _decode_one_two(base, k, "middle pair")
    solver.set_concrete(p - 1, low)
    solver.set_concrete(p, mid)
    _eqB_odd(sums, solver, p, k, 1)
    for i in range(2, p - 1):
        _eqB_odd(sums, solver, p, k, i)
        _eqA_odd(sums, solver, p, k, p + 1 - i, p - i)
    _eqB_odd(sums, solver, p, k, p - 1)
    _eqB_odd(sums, solver, p, k, p)


def _eqA_even(sums, solver, p, k, i, target_j):
    # S_{i+1} - S_i = V_{i-1} + 2 V_i + sum_{j=i+1}^{2p-i+1} V_j
    measured = vec_sub(sums(i + 1), sums(i))
    terms = [(2, i)] + [(1, j) for j in range(i + 1, 2 * p - i + 2)]
    solver.solve(measured, terms, target_j, 1, f"even spine step i={i}")


def _eqB_even(sums, solver, p, k, i):
    # S_{p+1+i} - S_{p+2+i} = V_{p-i+1} - V_{p+i+1} + sum_{j=p-i+2}^{p+i-1} V_j
    measured = vec_sub(sums(p + 1 + i), sums(p + 2 + i))
    terms = [(1, p - i + 1)] + [(1, j) for j in range(p - i + 2, p + i)]
    solver.solve(measured, terms, p + i + 1, -1, f"even spine step p+{i + 1}")


def _twin_leaf_even4(solver, sums, split, k, v1):
    """The 5-label spine (m = 4), where the long-range identities are direct."""
    d = vec_sub(sums(5), sums(4))  # V_4 - V_2
    if any(x != 0 for x in d):
        v4 = _unit(tuple(max(x, 0) for x in d), "fourth spine label")
        v2 = _unit(tuple(max(-x, 0) for x in d), "second spine label")
        v3 = _unit(
            comp_sub(comp_sub(comp_sub(split.I, _e(k, v1)), _e(k, v2)), _e(k, v4)),
            "third spine label",
        )
    else:
        e = vec_sub(sums(4), sums(3))  # V_2 + V_3
        pair = [j for j, c in enumerate(e) if c != 0]
        if len(pair) == 1 and e[pair[0]] == 2:
            v2 = v3 = v4 = pair[0]
        else:
            f = vec_sub(vec_sub(sums(6), sums(2)), split.L)  # 2 V_2 + V_3
            v2, v3 = None, None
            for j, c in enumerate(f):
                if c == 2:
                    v2 = j
                elif c == 1:
                    v3 = j
            if v2 is None or v3 is None:
                raise OracleInconsistent(f"cannot decode {tuple(f)} as double+single")
            v4 = v2
    for j, sym in zip((2, 3, 4), (v2, v3, v4)):
        solver.set_concrete(j, sym)
    # the order-3/order-2 difference exposes the twins, hence the spine end
    twins = vec_sub(vec_sub(sums(3), sums(2)),
                    _vadd(_vadd(_e(k, v1), _e(k, v2, 2)), _e(k, v3)))
    solver.set_concrete(5, _unit(comp_sub(split.L, tuple(twins)), "spine end"))


def _run_even_spine(solver, sums, split, p, k, n):
    """Spine of 2p+1 vertices, p >= 3, with the possible middle alternation."""
    vec4 = vec_sub(sums(p + 1), sums(p))  # V_{p-1} + 2 V_p + V_{p+1}
    nz = sorted(((c, j) for j, c in enumerate(vec4) if c != 0), reverse=True)
    counts = sorted((c for c, _ in nz), reverse=True)
    if counts == [4]:
        s = nz[0][1]
        for j in (p - 1, p, p + 1):
            solver.set_concrete(j, s)
    elif counts == [2, 2]:
        x, y = sorted(j for _, j in nz)
        solver.start_alternation((x, y))
        solver.labels[p - 1] = "lo"
        solver.labels[p + 1] = "lo"
        solver.labels[p] = "hi"
        # "lo"/"hi" are positional tokens; which symbol is which is open
    else:
        vp = nz[0][1]  # the symbol with coefficient >= 2
        solver.set_concrete(p, vp)
        q = vec_sub(sums(p + 2), sums(p + 1))  # V_p + V_{p+1}
        vp1 = _unit(vec_sub(q, _e(k, vp)), "middle right")
        solver.set_concrete(p + 1, vp1)
        vm1 = _unit(vec_sub(vec_sub(vec4, _e(k, vp, 2)), _e(k, vp1)), "middle left")
        solver.set_concrete(p - 1, vm1)

    for i in range(1, (p - 3) // 2 + 1):
        _eqB_even(sums, solver, p, k, 2 * i - 1)
        _eqA_even(sums, solver, p, k, p + 1 - 2 * i, p - 2 * i)
        _eqB_even(sums, solver, p, k, 2 * i)
        _eqA_even(sums, solver, p, k, p - 2 * i, p - 2 * i - 1)
    if p % 2 == 0:
        _eqB_even(sums, solver, p, k, p - 3)
        _eqA_even(sums, solver, p, k, 3, 2)
    _eqB_even(sums, solver, p, k, p - 2)
    _eqB_even(sums, solver, p, k, p - 1)

    if not solver.resolved:
        # compare the interior sum against the total composition
        measured = vec_sub(vec_sub(sums(n), split.L), _e(k, solver.concrete(1)))
        terms = [(1, j) for j in range(2, 2 * p + 1)]
        solver.resolve_with(measured, terms, "final swap resolution")
    _eqB_even(sums, solver, p, k, p)


# -- triangle with a pendant path ------------------------------------------------


def reconstruct_triangle_tail(oracle: Oracle) -> ReconstructionResult:
    """Triangle with an odd pendant path, from sum queries only.

    The same spine telescoping as for twin-leaf stars applies (only the
    order-2 answer differs), except the attachment label is recovered late
    from the order-3/order-2 difference.  Even tails are refused: they admit
    two equicomposable labelings.
    """
    g = oracle.graph
    k = oracle.k
    parts = triangle_tail_parts(g)
    if parts is None:
        raise StructureMismatch("carrier is not a triangle with a pendant path")
    u1, u2, spine = parts
    m = len(spine) - 1
    if m % 2 == 0:
        raise EvenTail("even pendant paths are confusable")
    n = g.n
    sums = _SumCache(oracle)

    if m == 1:
        total = sums(1)
        v1 = _unit(vec_sub(sums(3), tuple(2 * x for x in total)), "attachment label")
        v2 = _unit(_vadd(vec_sub(tuple(2 * x for x in total), sums(2)), _e(k, v1)),
                   "pendant label")
        twins = comp_sub(comp_sub(total, _e(k, v1)), _e(k, v2))
        return _finish(oracle, _assemble_spine(g, u1, u2, spine, [v1, v2], twins, k))

    p = (m + 1) // 2
    solver = _SpineSolver(k, m + 1)
    if p == 2:
        base = vec_sub(sums(3), sums(2))  # V_1 + 2 V_2
        v1, v2 = _decode_one_two(base, k, "attachment pair")
        v3 = _unit(vec_sub(sums(4), sums(3)), "third spine label")
        v4 = _unit(_vadd(vec_sub(sums(5), sums(4)), _vadd(_e(k, v1), _e(k, v2))),
                   "fourth spine label")
        for j, sym in zip((1, 2, 3, 4), (v1, v2, v3, v4)):
            solver.set_concrete(j, sym)
    else:
        _run_odd_spine_tail(solver, sums, p, k)
    total = sums(n)
    spine_labels = [solver.concrete(j) for j in range(1, m + 2)]
    twins = total
    for sym in spine_labels:
        twins = comp_sub(twins, _e(k, sym))
    return _finish(oracle, _assemble_spine(g, u1, u2, spine, spine_labels, twins, k))


def _run_odd_spine_tail(solver, sums, p, k):
    """Odd spine telescoping without prior knowledge of the attachment label."""
    base = vec_sub(sums(p + 1), sums(p))  # V_{p-1} + 2 V_p
    low, mid = _decode_one_two(base, k, "middle pair")
    solver.set_concrete(p - 1, low)
    solver.set_concrete(p, mid)
    _eqB_odd(sums, solver, p, k, 1)
    for i in range(2, p - 1):
        _eqB_odd(sums, solver, p, k, i)
        _eqA_odd(sums, solver, p, k, p + 1 - i, p - i)
    _eqB_odd(sums, solver, p, k, p - 1)
    # attachment label: S_3 - S_2 = V_1 + 2 V_2 + sum_{j=3}^{2p-2} V_j
    measured = vec_sub(sums(3), sums(2))
    terms = [(2, 2)] + [(1, j) for j in range(3, 2 * p - 1)]
    solver.solve(measured, terms, 1, 1, "attachment label")
    _eqB_odd(sums, solver, p, k, p)


# -- generic brute force ----------------------------------------------------------


def _labeled_isomorphic(g: Graph, lab1, lab2) -> bool:
    """Label-preserving automorphism test via backtracking (any order)."""
    if sorted(lab1) != sorted(lab2):
        return False
    n = g.n
    deg = g.degrees
    cands = [[w for w in range(n)
              if deg[w] == deg[v] and lab2[w] == lab1[v]] for v in range(n)]
    sigma = [-1] * n
    used = [False] * n

    def extend(v):
        if v == n:
            return True
        for w in cands[v]:
            if used[w]:
                continue
            ok = all(g.has_edge(sigma[u], w) == g.has_edge(u, v) for u in range(v))
            if ok:
                sigma[v] = w
                used[w] = True
                if extend(v + 1):
                    return True
                used[w] = False
                sigma[v] = -1
        return False

    return extend(0)


def brute_force_reconstruct(oracle: Oracle, *, tree_cap: Optional[int] = None,
                            graph_cap: Optional[int] = None) -> ReconstructionResult:
    """Compare every labeling of the known content against all multiset answers.

    Queries every order once (n multiset queries); the top-order answer fixes
    the symbol content, so only arrangements of that multiset are candidates.
    Matching labelings are grouped into isomorphism classes: one class is a
    unique reconstruction, several are returned as an ambiguity witness list.
    Caps default to 12 for trees and 8 otherwise; RECON_BUDGET overrides both.
    """
    from itertools import permutations

    g = oracle.graph
    n, k = oracle.n, oracle.k
    env = _env_budget()
    if g.is_tree():
        cap = tree_cap if tree_cap is not None else (env or BRUTE_TREE_CAP)
    else:
        cap = graph_cap if graph_cap is not None else (env or BRUTE_GRAPH_CAP)
    if n > cap:
        raise BudgetExceeded(f"brute force capped at order {cap} for this carrier")
    if k > n:
        raise BudgetExceeded("brute force supports at most n symbols")

    answers = {t: oracle.multiset_query(t) for t in range(1, n + 1)}
    content = answers[n].items[0][0]
    target = {t: ans.items for t, ans in answers.items()}
    s2_target = answers[2].coordinate_sum(k) if n >= 2 else None
    degs = g.degrees

    matches: list[tuple] = []
    for cand in sorted(set(permutations(_expand(content)))):
        if s2_target is not None:
            s2 = [0] * k
            for v, sym in enumerate(cand):
                s2[sym] += degs[v]
            if tuple(s2) != s2_target:
                continue
        if _candidate_matches(g, cand, k, target):
            matches.append(cand)

    classes: list[tuple] = []
    for lab in matches:
        if not any(_labeled_isomorphic(g, lab, rep) for rep in classes):
            classes.append(lab)
    if not classes:
        raise OracleInconsistent("no labeling matches the oracle's answers")
    if len(classes) == 1:
        return _finish(oracle, classes[0])
    return _finish(oracle, classes[0], status="ambiguous", witnesses=tuple(classes))


def _candidate_matches(g: Graph, lab, k, target) -> bool:
    from collections import Counter

    by_t: dict[int, Counter] = {}
    for s in g.all_connected_sets():
        c = [0] * k
        for v in s:
            c[lab[v]] += 1
        by_t.setdefault(len(s), Counter())[tuple(c)] += 1
    for t, items in target.items():
        if tuple(sorted(by_t.get(t, Counter()).items())) != items:
            return False
    return True


# -- dispatch ---------------------------------------------------------------------


def reconstruct_auto(oracle: Oracle) -> ReconstructionResult:
    """Pick the dedicated algorithm matching the carrier, else brute force."""
    g = oracle.graph
    if star_parts(g) is not None:
        return reconstruct_star(oracle)
    if twin_leaf_star_parts(g) is not None:
        return reconstruct_twin_leaf_star(oracle)
    sub = substar_parts(g)
    if sub is not None and oracle.k == 2 and all(len(b) <= 2 for b in sub[1]):
        return reconstruct_once_subdivided_star(oracle)
    if bistar_parts(g) is not None:
        if oracle.k == 2:
            return reconstruct_bistar_k2(oracle)
        return reconstruct_bistar(oracle)
    tri = triangle_tail_parts(g)
    if tri is not None and (len(tri[2]) - 1) % 2 == 1:
        return reconstruct_triangle_tail(oracle)
    return brute_force_reconstruct(oracle)


ALGORITHMS = {
    "star": reconstruct_star,
    "substar-once": reconstruct_once_subdivided_star,
    "bistar-k2": reconstruct_bistar_k2,
    "bistar": reconstruct_bistar,
    "twin-leaf": reconstruct_twin_leaf_star,
    "triangle-tail": reconstruct_triangle_tail,
    "brute": brute_force_reconstruct,
    "auto": reconstruct_auto,
}
