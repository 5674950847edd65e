"""Graph container, standard families, and the two wire formats.

Core claims:
    - from_edges symmetrizes, dedups, and validates endpoints
    - neighbor / degree / loop queries agree with a dict-of-sets reference
    - relabel, induced, complement, and components behave on random draws
    - every standard family has the advertised order, size, and degrees
    - serialize -> parse round-trips both formats exactly
    - malformed text fails with a line-numbered FormatError
"""

import numpy as np
import pytest

from homalg import (
    FormatError,
    Graph,
    ParameterError,
    bipartition,
    complete,
    complete_bipartite,
    cycle,
    empty_graph,
    independent_set_graph,
    looped_points,
    make_family,
    parse_graph,
    serialize_graph,
    split_components,
    widom_rowlinson,
)
from helpers import adjacency_set, rand_graph


def test_from_edges_symmetrizes_and_dedups():
    g = Graph.from_edges(3, [(0, 1), (1, 0), (0, 1), (2, 2)])
    assert g.n_edges == 2
    assert g.has_edge(1, 0) and g.has_edge(0, 1)
    assert g.has_loop(2) and not g.has_loop(0)
    assert list(g.loops()) == [2]


def test_from_edges_rejects_bad_endpoints():
    with pytest.raises(ParameterError):
        Graph.from_edges(2, [(0, 2)])
    with pytest.raises(ParameterError):
        Graph.from_edges(2, [(-1, 0)])
    with pytest.raises(ParameterError):
        Graph.from_edges(-1, [])


def test_queries_match_reference(rng):
    for _ in range(40):
        n = rng.randint(0, 7)
        g = rand_graph(rng, n)
        ref = {u: set() for u in range(n)}
        for u, v in g.edges():
            ref[u].add(v)
            ref[v].add(u)
        for u in range(n):
            assert set(int(w) for w in g.neighbors(u)) == ref[u]
            assert g.degree(u) == len(ref[u])
        assert g.n_edges == sum(1 for _ in g.edges())


def test_directed_pairs_cover_both_orientations(rng):
    g = rand_graph(rng, 6)
    src, dst = g.directed_pairs()
    pairs = set(zip(src.tolist(), dst.tolist()))
    assert pairs == adjacency_set(g)


def test_relabel_round_trip(rng):
    for _ in range(25):
        n = rng.randint(1, 8)
        g = rand_graph(rng, n)
        perm = list(range(n))
        rng.shuffle(perm)
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        assert g.relabel(perm).relabel(inv) == g


def test_induced_subgraph(rng):
    g = rand_graph(rng, 7)
    keep = [1, 3, 4, 6]
    sub = g.induced(keep)
    assert sub.order == 4
    for i, u in enumerate(keep):
        for j, v in enumerate(keep):
            assert sub.has_edge(i, j) == g.has_edge(u, v)
    with pytest.raises(ParameterError):
        g.induced([0, 9])


def test_complement_simple(rng):
    g = rand_graph(rng, 6)
    c = g.complement_simple()
    assert c.loops().size == 0
    for u in range(6):
        for v in range(u + 1, 6):
            assert c.has_edge(u, v) != g.has_edge(u, v)


def test_components_and_split():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (3, 4), (5, 5)])
    comps = g.components()
    assert [c.tolist() for c in comps] == [[0, 1, 2], [3, 4], [5], [6]]
    parts = split_components(g)
    assert [p.order for p in parts] == [3, 2, 1, 1]
    assert parts[2].has_loop(0) and not parts[3].has_loop(0)
    assert not g.is_connected()
    assert cycle(5).is_connected()


def test_bipartition():
    sides = bipartition(cycle(6))
    assert sides is not None
    s0, s1 = (set(s.tolist()) for s in sides)
    assert s0 == {0, 2, 4} and s1 == {1, 3, 5}
    assert bipartition(cycle(5)) is None
    assert bipartition(looped_points(1)) is None
    # isolated vertices land on side zero
    sides = bipartition(empty_graph(3))
    assert sides[0].tolist() == [0, 1, 2]


def test_families():
    for q in range(1, 9):
        k = complete(q)
        assert k.order == q and k.n_edges == q * (q - 1) // 2
        assert all(k.degree(v) == q - 1 for v in range(q))
    for a, b in [(1, 1), (2, 3), (4, 4)]:
        kab = complete_bipartite(a, b)
        assert kab.order == a + b and kab.n_edges == a * b
        assert bipartition(kab) is not None
    for n in range(3, 9):
        c = cycle(n)
        assert c.n_edges == n and all(c.degree(v) == 2 for v in range(n))
        assert (bipartition(c) is not None) == (n % 2 == 0)
    assert looped_points(4).loops().tolist() == [0, 1, 2, 3]
    assert empty_graph(0).order == 0
    hind = independent_set_graph()
    assert hind.order == 2 and hind.has_loop(0) and not hind.has_loop(1)
    wr = widom_rowlinson()
    assert wr.order == 3 and wr.loops().tolist() == [0, 1, 2]
    assert wr.has_edge(0, 1) and wr.has_edge(1, 2) and not wr.has_edge(0, 2)


def test_family_parameter_errors():
    with pytest.raises(ParameterError):
        complete(0)
    with pytest.raises(ParameterError):
        cycle(2)
    with pytest.raises(ParameterError):
        looped_points(0)
    with pytest.raises(ParameterError):
        make_family("nope")
    with pytest.raises(ParameterError):
        make_family("cycle", 5, 6)


def test_round_trip_both_formats(rng):
    for _ in range(50):
        g = rand_graph(rng, rng.randint(0, 9))
        assert parse_graph(serialize_graph(g, "edge-list")) == g
        assert parse_graph(serialize_graph(g, "json")) == g


def test_edge_list_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError, match="line 1"):
        parse_graph("3\n0 1\n")
    with pytest.raises(FormatError, match="line 2"):
        parse_graph("3 1\n0 1 2\n")
    with pytest.raises(FormatError, match="line 3"):
        parse_graph("3 2\n0 1\n0 7\n")
    with pytest.raises(FormatError, match="promised"):
        parse_graph("3 2\n0 1\n")
    with pytest.raises(FormatError):
        parse_graph("")


def test_json_parse_errors():
    with pytest.raises(FormatError):
        parse_graph("{not json")
    with pytest.raises(FormatError):
        parse_graph('{"order": -1, "edges": []}')
    with pytest.raises(FormatError):
        parse_graph('{"order": 2, "edges": [[0, 5]]}')
    with pytest.raises(FormatError):
        parse_graph('{"order": 2, "edges": [[0]]}')
    with pytest.raises(FormatError):
        parse_graph('{"order": 2, "edges": [], "extra": 1}')


def test_graph_equality_and_hash(rng):
    g = rand_graph(rng, 6)
    again = Graph.from_edges(6, list(g.edges()))
    assert g == again and hash(g) == hash(again)
    assert g != empty_graph(6) or g.n_edges == 0


def test_packed_rows_match_matrix(rng):
    g = rand_graph(rng, 9)
    m = g.bool_matrix()
    assert np.array_equal(m, m.T)
    for v in range(9):
        row = g.row_int(v)
        assert [(row >> u) & 1 for u in range(9)] == m[v].astype(int).tolist()
