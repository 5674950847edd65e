"""Acceptance gate: the nine headline guarantees, each timed and reported.

Every test prints one line

    [criterion N] <label>: PASS|FAIL (<elapsed>s, budget <B>s)

straight to the terminal (capture disabled) and asserts its wall-clock
budget, so a slow regression fails loudly instead of rotting quietly.
"""

import json
import math
import subprocess
import sys
import time
from contextlib import contextmanager
from functools import reduce

from homalg import (
    EQUAL,
    IDENTITIES,
    STRICT_GREATER,
    STRICT_LESS,
    CounterexampleCertificate,
    Graph,
    bipartition,
    canonical_form,
    complete,
    complete_bipartite,
    count_loops,
    cycle,
    disjoint_union,
    enumerate_regular,
    hom_bruteforce,
    hom_count,
    hom_from_complete,
    hom_from_complete_bipartite,
    independent_set_graph,
    is_isomorphic,
    join,
    loop_all,
    looped_points,
    looped_subgraph,
    power,
    random_graph,
    tensor,
    union_power_padding,
    verify_certificate,
    widom_rowlinson,
    wr_verdict,
    zhao_criterion,
)
from helpers import automorphism_count, labeled_regular_count, rand_graph


def rand_graph_np(nprng, lo, hi):
    return random_graph(nprng, int(nprng.integers(lo, hi + 1)))


def rand_bipartite(rng, order):
    side = [rng.randint(0, 1) for _ in range(order)]
    edges = [
        (u, v)
        for u in range(order)
        for v in range(u + 1, order)
        if side[u] != side[v] and rng.random() < 0.5
    ]
    return Graph.from_edges(order, edges)


@contextmanager
def criterion(capsys, num, label, budget):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        status = "PASS" if ok and elapsed < budget else "FAIL"
        with capsys.disabled():
            print(f"[criterion {num}] {label}: {status} ({elapsed:.1f}s, budget {budget}s)")
    assert elapsed < budget, f"criterion {num} took {elapsed:.1f}s, budget {budget}s"


def test_criterion_1_counter_matches_brute_force(rng, capsys):
    with criterion(capsys, 1, "backtracking equals brute force on 500 pairs", 60):
        for _ in range(500):
            g = rand_graph(rng, rng.randint(0, 4), loop_p=0.5)
            h = rand_graph(rng, rng.randint(0, 4), loop_p=0.5)
            assert hom_count(g, h) == hom_bruteforce(g, h)


def test_criterion_2_product_and_adjunction(rng, capsys):
    with criterion(capsys, 2, "target products multiply, powers curry", 120):
        for _ in range(200):
            g = rand_graph(rng, rng.randint(0, 3))
            h1 = rand_graph(rng, rng.randint(0, 3))
            h2 = rand_graph(rng, rng.randint(0, 3))
            assert hom_count(g, tensor(h1, h2)) == hom_count(g, h1) * hom_count(g, h2)
        for _ in range(200):
            g = rand_graph(rng, rng.randint(0, 3))
            a = rand_graph(rng, rng.randint(0, 3))
            h = rand_graph(rng, rng.randint(0, 3))
            assert hom_count(tensor(g, a), h) == hom_count(g, power(h, a))


def test_criterion_3_identity_suite(nprng, capsys):
    with criterion(capsys, 3, "module-algebra identity suite", 300):
        assert len(IDENTITIES) == 9
        for check in IDENTITIES:
            for _ in range(100):
                assert check.trial(nprng), check.name
        # union-power padding count at the smallest nontrivial instance
        assert union_power_padding(looped_points(1), looped_points(1), complete(2)) == 2
        # tensoring tracks bipartiteness of the factors
        for _ in range(100):
            a = rand_graph_np(nprng, 1, 4)
            b = rand_graph_np(nprng, 1, 4)
            want = bipartition(a) is not None or bipartition(b) is not None
            assert (bipartition(tensor(a, b)) is not None) == want
        # powering a based graph inverts it
        for _ in range(100):
            while True:
                a = rand_graph_np(nprng, 1, 3)
                if a.n_edges:
                    break
            b = rand_graph_np(nprng, 0, 3)
            want = bipartition(a) is not None and bipartition(b) is None
            assert (bipartition(power(a, b)) is not None) == want
        # looped join regularity: the looped double cover bumps the degree
        for d in range(1, 6):
            got = tensor(loop_all(complete(d)), complete(2))
            assert is_isomorphic(got, complete_bipartite(d, d))
        for g, d in [(cycle(5), 2), (cycle(6), 2), (complete(4), 3)]:
            dc = tensor(loop_all(g), complete(2))
            assert dc.loops().size == 0
            assert set(dc.degrees().tolist()) == {d + 1}
            assert bipartition(dc) is not None



def test_criterion_4_power_loops_count_maps(rng, capsys):
    with criterion(capsys, 4, "loops of the power graph count maps", 60):
        for _ in range(100):
            g = rand_graph(rng, rng.randint(0, 3))
            h = rand_graph(rng, rng.randint(0, 3))
            assert count_loops(power(h, g)) == hom_count(g, h)


def test_criterion_5_counterexample_certificate(capsys):
    with criterion(capsys, 5, "scaled-target counterexample via the CLI", 600):
        proc = subprocess.run(
            [sys.executable, "-m", "homalg", "counterexample", "7"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0, proc.stderr
        cert = CounterexampleCertificate.from_json(proc.stdout)
        assert verify_certificate(cert) == []
        d, n, k = cert.d, cert.g.order, cert.k
        assert (d, n, k) == (7, 10, 4945)
        # the flipped comparison, replayed bit-exact
        lhs = hom_count(cert.g, cert.kh)
        rhs = hom_from_complete_bipartite(7, 7, cert.kh)
        assert lhs > 0
        assert lhs ** (2 * d) > rhs ** n
        assert cert.verdict_kdd.relation == STRICT_GREATER
        assert cert.verdict_kdd.lhs_witness == lhs ** (2 * d)
        assert cert.verdict_kdd.rhs_witness == rhs ** n
        # clique side collapses: no 8-clique anywhere in the scaled target
        assert hom_from_complete(8, cert.kh) == 0
        assert cert.verdict_kd1.relation == STRICT_GREATER
        # k is minimal for the flip
        base = hom_count(cert.g, cert.h)
        kdd_base = hom_from_complete_bipartite(7, 7, cert.h)
        assert (k * base) ** (2 * d) > (k * kdd_base) ** n
        assert ((k - 1) * base) ** (2 * d) <= ((k - 1) * kdd_base) ** n
        # the base count agrees between the counter and raw enumeration
        g57 = join(cycle(5), cycle(5))
        assert cert.g == g57
        brute = hom_bruteforce(g57, complete(7), cap=300_000_000)
        assert brute == hom_count(g57, complete(7)) == 378000 == base


def test_criterion_6_looped_power_core_maximizer(capsys):
    with criterion(capsys, 6, "clique-side bound over all regular classes", 600):
        hind = independent_set_graph()
        core = looped_subgraph(power(hind, complete(2)))
        assert is_isomorphic(core, widom_rowlinson())
        assert hom_count(complete(4), core) == 31
        cases = []
        for d in (2, 3):
            for n in range(d + 1, 9):
                if n * d % 2:
                    continue
                cases.append((n, d, enumerate_regular(n, d)))
        counts = {(n, d): len(reps) for n, d, reps in cases}
        assert counts[(4, 3)] == 1 and counts[(6, 3)] == 2 and counts[(8, 3)] == 6
        ids8 = {canonical_form(g).id() for g in enumerate_regular(8, 3)}
        two_k4 = disjoint_union(complete(4), complete(4))
        assert canonical_form(two_k4).id() in ids8
        # enumeration is complete: orbit sizes sum to an independent count
        for n, d, reps in cases:
            labeled = sum(math.factorial(n) // automorphism_count(g) for g in reps)
            assert labeled == labeled_regular_count(n, d)
        # the bound, with equality exactly at unions of K_{d+1}
        for n, d, reps in cases:
            for g in reps:
                v = wr_verdict(g, hind, complete(2))
                assert v.relation in (EQUAL, STRICT_LESS)
                if n % (d + 1) == 0:
                    blocks = [complete(d + 1)] * (n // (d + 1))
                    is_union = is_isomorphic(g, reduce(disjoint_union, blocks))
                else:
                    is_union = False
                assert (v.relation == EQUAL) == is_union


def test_criterion_7_criterion_gap(capsys):
    with criterion(capsys, 7, "pair-graph test fails where search stays clean", 300):
        hind = independent_set_graph()
        square = tensor(hind, hind)
        assert not zhao_criterion(square)
        from homalg import check_bipartite_reducible

        verdict = check_bipartite_reducible(square, 5)
        assert verdict.status == "no-counterexample"
        assert verdict.limit == 5


def test_criterion_8_loop_laws(rng, capsys):
    with criterion(capsys, 8, "looped-core law and scaled double covers", 60):
        for _ in range(100):
            g = rand_graph(rng, rng.randint(0, 3))
            h = rand_graph(rng, rng.randint(0, 4))
            assert hom_count(g, looped_subgraph(h)) == hom_count(loop_all(g), h)
        for _ in range(100):
            b = rand_bipartite(rng, rng.randint(1, 6))
            assert is_isomorphic(tensor(b, complete(2)), tensor(b, looped_points(2)))



def test_criterion_9_bipartite_sources_never_flip(rng, capsys):
    with criterion(capsys, 9, "bipartite regular sources obey the 2d bound", 600):
        targets = [rand_graph(rng, rng.randint(1, 4), loop_p=0.5) for _ in range(50)]
        inventory = []
        for d in (1, 2, 3):
            for n in range(d + 1, 9):
                if n * d % 2:
                    continue
                inventory.extend(
                    g for g in enumerate_regular(n, d) if bipartition(g) is not None
                )
        assert len(inventory) >= 8
        for g in inventory:
            d = g.degree(0)
            n = g.order
            for h in targets:
                lhs = hom_count(g, h) ** (2 * d)
                rhs = hom_from_complete_bipartite(d, d, h) ** n
                assert lhs <= rhs
