"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines.  Every expected value is pinned exactly; runtime bounds are asserted
with wide margins against the wall clock.
"""

import io
import itertools
import random
import time

import pytest

from compograph import catalog
from compograph.cli import run as cli_run
from compograph.confusability import (
    VERDICT_CONFUSABLE,
    VERDICT_NOT_SUM,
    VERDICT_SUM,
    classify,
    equicomposable,
    sum_equicomposable,
)
from compograph.constructions import (
    attach_at_center,
    interleaved_pair,
    subdivided_star_family,
    triangle_tail_pair,
)
from compograph.counting import chi_closed, chi_closed_for_s11m, chi_enumerate
from compograph.graphs import (
    build_graph,
    graphs_isomorphic,
    labeled,
    labelings_isomorphic,
    serialize_graph,
)
from compograph.oracle import Oracle, comp_sub
from compograph.reconstruct import (
    _SumCache,
    center_label,
    reconstruct_bistar,
    reconstruct_bistar_k2,
    reconstruct_once_subdivided_star,
    reconstruct_star,
    reconstruct_triangle_tail,
    reconstruct_twin_leaf_star,
    split_leaves_internal,
)
from compograph.structure import (
    path_labelings_isomorphic,
    substar_labelings_isomorphic,
    substar_parts,
)

from tests.test_graphs import _tree_from_sequence


def _report(num, text):
    print(f"CRITERION {num:2d} PASS  {text}")


def _cli(argv):
    out = io.StringIO()
    status = cli_run(argv, out)
    return status, out.getvalue()


def _hidden_matches(g, recovered, hidden):
    if substar_parts(g) is not None:
        return substar_labelings_isomorphic(g, recovered, hidden)
    return labelings_isomorphic(g, recovered, hidden)


def test_criterion_01_oracle_fidelity(nine_vertex_tree):
    start = time.perf_counter()
    o = Oracle(nine_vertex_tree)
    m3 = o.multiset_query(3)
    expected = {
        (2, 0, 1, 0): 1,  # two A with a C
        (1, 1, 1, 0): 2,  # A, B, C
        (2, 1, 0, 0): 1,  # two A with a B
        (1, 1, 0, 1): 3,  # A, B, D
        (0, 1, 0, 2): 2,  # B with two D
        (0, 1, 1, 1): 2,  # B, C, D
        (1, 0, 0, 2): 1,  # A with two D
    }
    assert dict(m3.items) == expected
    assert o.sum_query(3) == (10, 10, 5, 11)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0
    _report(1, f"order-3 answers exact on the nine-vertex tree ({elapsed:.3f}s)")


def test_criterion_02_degree_identity():
    rng = random.Random(20240615)
    checked = 0
    while checked < 1000:
        n = rng.randint(2, 8)
        seq = [rng.randrange(n) for _ in range(max(n - 2, 0))]
        tree = _tree_from_sequence(n, seq)
        edges = set(tree.edges)
        if rng.random() < 0.5:  # half the cases get extra edges
            extra = [
                (u, v) for u in range(n) for v in range(u + 1, n)
                if (u, v) not in edges
            ]
            rng.shuffle(extra)
            edges.update(extra[: rng.randint(0, 4)])
        g = build_graph(n, edges)
        k = rng.randint(2, 4)
        lab = tuple(rng.randrange(k) for _ in range(n))
        o = Oracle(labeled(g, lab, k=k))
        expected = [0] * k
        for v in range(n):
            expected[lab[v]] += g.degree(v)
        assert o.sum_query(2) == tuple(expected)
        checked += 1
    _report(2, f"S_2 equals degree-weighted labels on {checked} random carriers")


def test_criterion_03_counting_closed_vs_enumeration():
    start = time.perf_counter()
    specs = []
    specs += [catalog.path(n) for n in range(1, 9)]
    specs += [catalog.complete(n) for n in range(1, 7)]
    specs += [catalog.star(n) for n in range(1, 8)]
    # every subdivided star on <= 8 vertices (>= 3 branches)
    def substars(maxn):
        out = []

        def rec(branches, remaining, minlen):
            if len(branches) >= 3:
                out.append(catalog.substar(*branches))
            for length in range(minlen, remaining + 1):
                rec(branches + [length], remaining - length, length)

        rec([], maxn - 1, 1)
        return out

    specs += substars(8)
    specs += [catalog.substar(1, 1, m) for m in range(2, 6)]
    specs += [catalog.bistar(a, b) for a in range(4) for b in range(4)]
    checked = 0
    for spec in specs:
        g = catalog.generate(spec)
        for k in (1, 2, 3):
            assert chi_closed(spec, k).count == chi_enumerate(g, k).count, (spec, k)
            checked += 1
    for m in range(1, 6):  # the twin-leaf family by its own closed form
        g = catalog.generate(catalog.substar(1, 1, m))
        for k in (1, 2, 3):
            assert chi_closed_for_s11m(m, k) == chi_enumerate(g, k).count
            checked += 1
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _report(3, f"{checked} closed-form/enumeration equalities ({elapsed:.1f}s)")


def _sweep(g, k, algo, budget=None):
    count = 0
    for lab in itertools.product(range(k), repeat=g.n):
        o = Oracle(labeled(g, lab, k=k))
        res = algo(o)
        assert res.status == "unique", (g.edges, lab)
        assert _hidden_matches(g, res.labeling, lab), (g.edges, lab, res.labeling)
        if budget is not None:
            assert budget(o), (g.edges, lab, dict(o.counts))
        count += 1
    return count


def test_criterion_04_reconstructor_soundness_and_budgets():
    start = time.perf_counter()
    runs = 0

    # stars up to order 7: exactly two sum queries
    for leaves in range(1, 7):
        g = catalog.generate(catalog.star(leaves))
        for k in (2, 3):
            runs += _sweep(g, k, reconstruct_star,
                           lambda o: o.sum_calls() == 2 and o.multiset_calls() == 0)

    # center lemma: three sum queries in total
    for branches in ((1, 1, 2), (1, 2, 2), (1, 1, 1, 3)):
        g = catalog.generate(catalog.substar(*branches))
        for k in (2, 3):
            for lab in itertools.product(range(k), repeat=g.n):
                o = Oracle(labeled(g, lab, k=k))
                sums = _SumCache(o)
                split = split_leaves_internal(o, sums)
                assert center_label(o, split, sums) == lab[0]
                assert o.sum_calls() == 3
                runs += 1

    # stars subdivided at most once, order <= 8, k = 2: <= 4 queries
    once_shapes = [
        (1, 1, 2), (1, 2, 2), (2, 2, 2), (1, 1, 1, 2), (1, 1, 2, 2),
        (1, 2, 2, 2), (1, 1, 1, 1, 2), (1, 1, 1, 2, 2), (1, 1, 1, 1, 1, 2),
    ]
    for branches in once_shapes:
        g = catalog.generate(catalog.substar(*branches))
        runs += _sweep(g, 2, reconstruct_once_subdivided_star,
                       lambda o: o.total_calls() <= 4)

    # bistars with up to three leaves per side
    for lu in range(1, 4):
        for lv in range(lu, 4):
            g = catalog.generate(catalog.bistar(lu, lv))
            runs += _sweep(g, 2, reconstruct_bistar_k2,
                           lambda o: o.total_calls() <= 3)
            for lab in itertools.product(range(3), repeat=g.n):
                o = Oracle(labeled(g, lab, k=3))
                res = reconstruct_bistar(o)
                assert res.status == "unique"
                assert labelings_isomorphic(g, res.labeling, lab)
                if lab[0] != lab[1]:  # distinct centers: three queries suffice
                    assert o.total_calls() <= 3, (lab, dict(o.counts))
                runs += 1

    # twin-leaf subdivided stars, m <= 6: sum queries only, at most m+3
    for m in range(1, 7):
        g = catalog.generate(catalog.substar(1, 1, m))
        for k in (2, 3):
            runs += _sweep(
                g, k, reconstruct_twin_leaf_star,
                lambda o, m=m: o.multiset_calls() == 0 and o.sum_calls() <= m + 3,
            )

    # odd triangle tails, m <= 5: sum queries only
    for m in (1, 3, 5):
        g = catalog.generate(catalog.triangle_tail(m))
        for k in (2, 3):
            runs += _sweep(g, k, reconstruct_triangle_tail,
                           lambda o: o.multiset_calls() == 0)

    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    _report(4, f"{runs} exhaustive reconstructions within budget ({elapsed:.1f}s)")


def test_criterion_05_worked_example(worked_subdivided_star):
    o = Oracle(worked_subdivided_star)
    sums = _SumCache(o)
    split = split_leaves_internal(o, sums)
    assert split.I == (2, 1)
    assert split.L == (2, 2)
    s2 = sums(2)
    assert s2 == (8, 4)
    residue = tuple(a - b - 2 * c for a, b, c in zip(s2, split.L, split.I))
    assert residue == (2, 0)
    assert center_label(o, split, sums) == 0
    m5 = o.multiset_query(5)
    assert dict(m5.items) == {(2, 3): 1, (3, 2): 6, (4, 1): 1}
    from collections import Counter

    R = Counter()
    for comp, mult in m5.items:
        R[comp_sub(sums(7), comp)] += mult
    assert dict(R) == {(2, 0): 1, (1, 1): 6, (0, 2): 1}
    res = reconstruct_once_subdivided_star(Oracle(worked_subdivided_star))
    assert substar_labelings_isomorphic(
        worked_subdivided_star.graph, res.labeling, worked_subdivided_star.labeling
    )
    _report(5, "intermediates I=(2,1) L=(2,2) center=A R={A^2,6AB,B^2} bit-exact")


def test_criterion_06_smallest_confusable_graphs(gem):
    start = time.perf_counter()
    for n in (1, 2, 3, 4):
        status, out = _cli(["scan", "--order", str(n)])
        assert status == 0
        assert "confusable" not in [line.split()[2] for line in out.splitlines()
                                    if line.startswith("CLASS")]
    status, out = _cli(["scan", "--order", "5"])
    assert status == 0
    class_lines = [l for l in out.splitlines() if l.startswith("CLASS")]
    confusable_ids = [l.split()[1] for l in class_lines if l.split()[2] == VERDICT_CONFUSABLE]
    carriers = catalog.enumerate_connected_graphs(5)
    by_id = {f"g5-{i:02d}": g for i, g in enumerate(carriers)}
    t2 = catalog.generate(catalog.triangle_tail(2))
    found = [by_id[cid] for cid in confusable_ids]
    assert len(found) == 2
    assert sorted(graphs_isomorphic(g, gem) for g in found) == [False, True]
    assert sorted(graphs_isomorphic(g, t2) for g in found) == [False, True]
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _report(6, f"order-5 confusable set is exactly {{gem, triangle-with-tail}} ({elapsed:.1f}s)")


def test_criterion_07_smallest_confusable_tree():
    start = time.perf_counter()
    status, out = _cli(["scan", "--order", "7", "--trees-only"])
    assert status == 0
    lines = out.splitlines()
    class_lines = [l for l in lines if l.startswith("CLASS")]
    assert len(class_lines) == 11
    confusable_ids = [l.split()[1] for l in class_lines if l.split()[2] == VERDICT_CONFUSABLE]
    assert len(confusable_ids) == 1
    carriers = catalog.enumerate_trees(7)
    carrier = {f"t7-{i:02d}": g for i, g in enumerate(carriers)}[confusable_ids[0]]
    assert graphs_isomorphic(carrier, catalog.generate(catalog.substar(1, 2, 3)))
    witness_lines = [l for l in lines if l.startswith("WITNESS")]
    assert len(witness_lines) == 1
    _, cid, w1, w2 = witness_lines[0].split()
    assert cid == confusable_ids[0]
    names = "ABCDEFG"
    lab1 = tuple(names.index(c) for c in w1)
    lab2 = tuple(names.index(c) for c in w2)
    k = max(lab1 + lab2) + 1
    assert equicomposable(labeled(carrier, lab1, k=k), labeled(carrier, lab2, k=k))
    assert not labelings_isomorphic(carrier, lab1, lab2)
    elapsed = time.perf_counter() - start
    assert elapsed < 600.0
    _report(7, f"only confusable 7-vertex tree is the (1,2,3) subdivided star ({elapsed:.1f}s)")


def test_criterion_08_sum_reconstructability_floor():
    for n in (1, 2, 3):
        for g in catalog.enumerate_connected_graphs(n):
            assert classify(g).verdict == VERDICT_SUM
    p4 = classify(catalog.generate(catalog.path(4)))
    assert p4.verdict == VERDICT_NOT_SUM
    assert (p4.sum_witness.lab1, p4.sum_witness.lab2) == ((0, 0, 1, 1), (0, 1, 0, 1))
    c4 = build_graph(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    assert classify(c4).verdict == VERDICT_NOT_SUM
    g = catalog.generate(catalog.substar(2, 2, 2))
    left = labeled(g, (0, 2, 0, 1, 2, 0, 1), k=3)
    right = labeled(g, (0, 0, 2, 2, 1, 1, 0), k=3)
    assert sum_equicomposable(left, right)
    assert not equicomposable(left, right)
    _report(8, "order<=3 sum-reconstructable; P_4 witness AABB/ABAB; C_4 and the "
               "three-branch pair behave as stated")


def test_criterion_09_triangle_tail_dichotomy():
    for p in (1, 2, 3):
        a, b = triangle_tail_pair(p)
        assert equicomposable(a, b)
        assert not labelings_isomorphic(a.graph, a.labeling, b.labeling)
    for m in (1, 3, 5):
        g = catalog.generate(catalog.triangle_tail(m))
        for lab in itertools.product(range(2), repeat=g.n):
            o = Oracle(labeled(g, lab, k=2))
            res = reconstruct_triangle_tail(o)
            assert o.multiset_calls() == 0
            assert labelings_isomorphic(g, res.labeling, lab)
    verdicts = {}
    for m in (1, 2, 3, 4):
        g = catalog.generate(catalog.triangle_tail(m))
        verdicts[m] = classify(g, max_order=7).verdict
    assert verdicts[2] == VERDICT_CONFUSABLE and verdicts[4] == VERDICT_CONFUSABLE
    assert verdicts[1] != VERDICT_CONFUSABLE and verdicts[3] != VERDICT_CONFUSABLE
    _report(9, "even tails confusable (witnessed), odd tails sum-reconstructable")


def test_criterion_10_interleaving_constructions():
    start = time.perf_counter()
    pairs = 0
    for n1 in (2, 3):
        for n2 in (1, 2, 3):
            for p1 in itertools.product(range(2), repeat=n1):
                for p2 in itertools.product(range(2), repeat=n2):
                    a, b = interleaved_pair(p1, p2, k=2)
                    assert equicomposable(a, b), (p1, p2)
                    pairs += 1
    attaches = 0
    for order in (1, 2, 3, 4):
        for gb in catalog.enumerate_connected_graphs(order):
            for baselab in itertools.product(range(2), repeat=order):
                for p2 in itertools.product(range(2), repeat=3):
                    a, b = attach_at_center(labeled(gb, baselab, k=2), 0, (0, 1), p2)
                    assert equicomposable(a, b), (gb.edges, baselab, p2)
                    attaches += 1
    assert (2 * 3 + 1) * (2 ** 3 - 2 ** 2) + 1 == 29
    members = [subdivided_star_family(2, 3, bits)
               for bits in itertools.product(range(2), repeat=2)]
    assert len(members) == 4 and all(m.n == 29 for m in members)
    for x, y in itertools.combinations(members, 2):
        assert equicomposable(x, y)
        assert not substar_labelings_isomorphic(x.graph, x.labeling, y.labeling)
    elapsed = time.perf_counter() - start
    assert elapsed < 300.0
    _report(10, f"{pairs} interleaved pairs, {attaches} attachments, and the "
                f"order-29 family of 4 verified ({elapsed:.1f}s)")


def test_criterion_11_path_spot_check():
    start = time.perf_counter()
    p7 = classify(catalog.generate(catalog.path(7)))
    p8 = classify(catalog.generate(catalog.path(8)))
    assert p7.verdict != VERDICT_CONFUSABLE
    assert p8.verdict == VERDICT_CONFUSABLE
    w = p8.multiset_witness
    assert equicomposable(
        labeled(p8.carrier, w.lab1, k=max(w.lab1 + w.lab2) + 1),
        labeled(p8.carrier, w.lab2, k=max(w.lab1 + w.lab2) + 1),
    )
    assert not path_labelings_isomorphic(w.lab1, w.lab2)
    elapsed = time.perf_counter() - start
    assert elapsed < 120.0
    _report(11, f"P_7 reconstructable, P_8 confusable ({elapsed:.1f}s)")


def test_criterion_12_determinism(tmp_path, nine_vertex_tree):
    fig = tmp_path / "fig1.g"
    fig.write_text(serialize_graph(nine_vertex_tree.graph, nine_vertex_tree.labeling,
                                   nine_vertex_tree.alphabet))
    commands = [
        ["scan", "--order", "5"],
        ["scan", "--order", "4", "--sum"],
        ["count", "--family", "substar:1,1,4", "--k", "3"],
        ["count", "--family", "path:8", "--k", "2", "--enumerate"],
        ["reconstruct", "--graph", str(fig), "--algo", "brute", "--k", "4"],
        ["construct", "--kind", "star-family", "--k", "2", "--m", "3",
         "--bits", "01", "--out", str(tmp_path / "fam"), "--verify"],
    ]
    for argv in commands:
        first = _cli(argv)
        second = _cli(argv)
        assert first == second, argv
    status, out = _cli(["reconstruct", "--graph", str(fig), "--algo", "brute", "--k", "4"])
    assert status == 0
    assert "RESULT unique" in out
    recovered = [l for l in out.splitlines() if l.startswith("RECOVERED")][0].split()[1]
    names = "ABCD"
    assert labelings_isomorphic(
        nine_vertex_tree.graph,
        tuple(names.index(c) for c in recovered),
        nine_vertex_tree.labeling,
    )
    _report(12, "repeated runs byte-identical; brute force recovers the figure tree")
