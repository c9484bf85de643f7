import numpy as np
import pytest

from trussdiv import Graph
from trussdiv.diversity import compute_score, upper_bound_score
from trussdiv.oracle import oracle_topr
from trussdiv.search import bounded_search, online_search, sparsify
from trussdiv.truss import truss_decompose

from conftest import complete_graph, er_graph


def test_sparsify_triangle_k3():
    g2 = sparsify(complete_graph(3), 3)
    assert (g2.n, g2.m) == (0, 0)


def test_sparsify_fig1_k4_preserves_center_score(fig1_full):
    g2 = sparsify(fig1_full, 4)
    assert g2.m == 38  # exactly the two bridges dropped
    a = compute_score(fig1_full, 0, 4)
    b = compute_score(g2, 0, 4)
    assert a.score == b.score == 3
    assert a.contexts.contexts == b.contexts.contexts


def test_sparsify_k2_keeps_triangle_edges():
    g = er_graph(40, 0.15, 4)
    g2 = sparsify(g, 2)
    tm = truss_decompose(g)
    expect = {(u, v) for (u, v), t in tm.as_dict().items() if t >= 3}
    got = {(int(u), int(v)) for u, v in g2.edge_list_external()}
    assert got == expect


def test_online_fig1(fig1_full):
    res = online_search(fig1_full, 1, 4)
    assert res.pairs() == [(0, 3)]
    assert res.search_space == 15
    assert res.records[0].contexts.contexts == [[1, 2, 3, 4], [5, 6, 7, 8],
                                                [9, 10, 11, 12, 13, 14]]


def test_online_empty_graph():
    g = Graph(np.empty((0, 2), dtype=np.int64))
    assert online_search(g, 5, 3).pairs() == []


def test_bounded_fig1_scores_exactly_once(fig1_full):
    res = bounded_search(fig1_full, 1, 4)
    assert res.pairs() == [(0, 3)]
    assert res.search_space == 1
    # the runner-up bound on the sparsified graph is 1, which triggers the stop
    g2 = sparsify(fig1_full, 4)
    others = sorted(upper_bound_score(g2, int(v), 4) for v in g2.ext_ids if v != 0)
    assert max(others) == 1


def test_bounded_empty_after_sparsify():
    res = bounded_search(complete_graph(3), 1, 3)
    assert res.pairs() == [] and res.search_space == 0
    assert [p.vertex for p in res.padding] == [0]
    assert all(p.padded and p.score == 0 for p in res.padding)


def test_r_validation(fig1_full):
    with pytest.raises(ValueError):
        online_search(fig1_full, 0, 3)
    with pytest.raises(ValueError):
        online_search(fig1_full, 16, 3)
    with pytest.raises(ValueError):
        bounded_search(fig1_full, 1, 1)


def test_answer_equivalence_grid(unit_grid):
    for name, g in unit_grid:
        for k in (2, 3, 4):
            for r in (1, 3, g.n):
                if not (1 <= r <= g.n):
                    continue
                a = online_search(g, r, k, with_contexts=False)
                b = bounded_search(g, r, k, with_contexts=False)
                assert a.pairs() == b.pairs(), (name, k, r)
                assert b.search_space <= a.search_space == g.n


def test_matches_oracle_ranking(unit_grid):
    for name, g in unit_grid[:10]:
        for k in (3, 4):
            res = online_search(g, min(5, g.n), k, with_contexts=False)
            ref = oracle_topr(g, min(5, g.n), k, cap=300)
            assert res.pairs() == [(s.vertex, s.score) for s in ref], (name, k)


def test_sparsification_safety(unit_grid):
    for name, g in unit_grid[:12]:
        for k in (3, 4):
            g2 = sparsify(g, k)
            kept = set(int(x) for x in g2.ext_ids)
            for v in g.ext_ids:
                v = int(v)
                ref = compute_score(g, v, k)
                if v in kept:
                    got = compute_score(g2, v, k)
                    assert got.score == ref.score, (name, v, k)
                    assert got.contexts.contexts == ref.contexts.contexts
                else:
                    assert ref.score == 0, (name, v, k)


def test_early_stop_soundness(unit_grid):
    """Every vertex left unscored by the pruned run has a bound no better
    than the worst returned score."""
    for name, g in unit_grid[:10]:
        k, r = 3, 2
        if g.n < r:
            continue
        res = bounded_search(g, r, k, with_contexts=False)
        if len(res.records) < r:
            continue
        worst = min(s for _, s in res.pairs())
        g2 = sparsify(g, k)
        ranked = sorted(
            ((upper_bound_score(g2, int(v), k), int(v)) for v in g2.ext_ids),
            key=lambda t: (-t[0], t[1]))
        pruned = ranked[res.search_space:]
        for ub, v in pruned:
            assert ub <= worst, (name, v)


def test_deterministic_tie_order():
    # two vertices with identical scores: the smaller external id wins
    g = er_graph(30, 0.4, 123)
    res = online_search(g, g.n, 3, with_contexts=False)
    pairs = res.pairs()
    for (v1, s1), (v2, s2) in zip(pairs, pairs[1:]):
        assert (s1, -v1) >= (s2, -v2) and s1 >= s2
        if s1 == s2:
            assert v1 < v2


def test_threads_bit_identical(fig1_full):
    g = er_graph(300, 0.05, 5)
    for graph in (fig1_full, g):
        r = min(10, graph.n)
        a = online_search(graph, r, 3, threads=1, with_contexts=False)
        b = online_search(graph, r, 3, threads=8, with_contexts=False)
        assert a.pairs() == b.pairs()
        assert a.digest() == b.digest()
