"""The oracle itself is validated only on hand-checkable cases; everything
else trusts its definitional directness."""

import pytest

from trussdiv.oracle import OracleCapExceeded, oracle_score, oracle_topr, oracle_truss

from conftest import complete_graph, er_graph, octahedron, path_graph, star_graph


def test_triangle():
    assert set(oracle_truss(complete_graph(3)).values()) == {3}


def test_k4():
    assert set(oracle_truss(complete_graph(4)).values()) == {4}


def test_k5():
    assert set(oracle_truss(complete_graph(5)).values()) == {5}


def test_octahedron():
    assert set(oracle_truss(octahedron()).values()) == {4}


def test_path():
    assert set(oracle_truss(path_graph(4)).values()) == {2}


def test_star():
    assert set(oracle_truss(star_graph(5)).values()) == {2}


def test_score_path_center():
    assert oracle_score(path_graph(3), 1, 3).score == 0


def test_score_fig1(fig1_full):
    rec = oracle_score(fig1_full, 0, 4)
    assert rec.score == 3
    assert rec.contexts == [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10, 11, 12, 13, 14]]


def test_score_r1_regression(fig1_full):
    # pinned once from the oracle itself: the wheel ego of r1 is one 3-truss
    assert oracle_score(fig1_full, 9, 3).score == 1


def test_topr_fig1(fig1_full):
    top = oracle_topr(fig1_full, 1, 4)
    assert [(s.vertex, s.score) for s in top] == [(0, 3)]


def test_topr_full_ranking_pinned(fig1_full):
    top = oracle_topr(fig1_full, fig1_full.n, 4)
    assert [(s.vertex, s.score) for s in top] == \
        [(0, 3)] + [(v, 1) for v in range(1, 9)]


def test_cap():
    g = er_graph(30, 0.2, 0)
    with pytest.raises(OracleCapExceeded):
        oracle_truss(g, cap=10)
    with pytest.raises(OracleCapExceeded):
        oracle_score(g, 0, 3, cap=10)
    with pytest.raises(OracleCapExceeded):
        oracle_topr(g, 1, 3, cap=10)
