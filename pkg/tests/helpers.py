"""Shared test utilities: random graph draws and tiny independent oracles."""

import itertools

from homalg import Graph


def rand_graph(rng, order, edge_p=0.5, loop_p=0.5):
    edges = []
    for u in range(order):
        if rng.random() < loop_p:
            edges.append((u, u))
        for v in range(u + 1, order):
            if rng.random() < edge_p:
                edges.append((u, v))
    return Graph.from_edges(order, edges)


def rand_loopfree(rng, order, edge_p=0.5):
    return rand_graph(rng, order, edge_p=edge_p, loop_p=0.0)


def adjacency_set(g):
    """Symmetric closure of the edge set as a frozenset of ordered pairs."""
    pairs = set()
    for u, v in g.edges():
        pairs.add((u, v))
        pairs.add((v, u))
    return pairs


def naive_hom(g, h):
    """Reference count: try every vertex map, check every edge."""
    ge = list(g.edges())
    ha = adjacency_set(h)
    total = 0
    for f in itertools.product(range(h.order), repeat=g.order):
        if all((f[u], f[v]) in ha for u, v in ge):
            total += 1
    return total


def brute_isomorphic(a, b):
    """Permutation search on adjacency sets; independent of canonical forms."""
    if a.order != b.order:
        return False
    pa, pb = adjacency_set(a), adjacency_set(b)
    if len(pa) != len(pb):
        return False
    for perm in itertools.permutations(range(a.order)):
        if {(perm[u], perm[v]) for u, v in pa} == pb:
            return True
    return False


def automorphism_count(g):
    """|Aut(g)| by checking every permutation against the bool matrix."""
    import numpy as np

    n = g.order
    if n == 0:
        return 1
    m = g.bool_matrix()
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    mapped = m[perms[:, :, None], perms[:, None, :]]
    return int((mapped == m[None]).all(axis=(1, 2)).sum())


def labeled_regular_count(n, d):
    """Number of labeled simple d-regular graphs on n vertices.

    Conditions on the neighborhood of one designated vertex at a time; the
    state is the multiset of residual degrees of the untouched vertices.
    Entirely independent of the package's enumerator.
    """
    import math
    from functools import lru_cache

    @lru_cache(maxsize=None)
    def rec(profile):
        if not profile:
            return 1
        r, rest = profile[0], profile[1:]
        if r > len(rest):
            return 0
        groups = {}
        for x in rest:
            groups[x] = groups.get(x, 0) + 1
        vals = sorted(groups)
        total = 0

        def pick(i, need, ways, taken):
            nonlocal total
            if need == 0:
                nxt = []
                for v in vals:
                    t = taken.get(v, 0)
                    nxt.extend([v] * (groups[v] - t))
                    nxt.extend([v - 1] * t)
                total += ways * rec(tuple(sorted((x for x in nxt if x > 0), reverse=True)))
                return
            if i == len(vals):
                return
            v = vals[i]
            for k in range(min(groups[v], need) + 1):
                taken[v] = k
                pick(i + 1, need - k, ways * math.comb(groups[v], k), taken)
            del taken[v]

        pick(0, r, 1, {})
        return total

    if d == 0:
        return 1
    if n * d % 2 or d >= n:
        return 0
    return rec(tuple([d] * n))
