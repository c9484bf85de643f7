import numpy as np
import pytest

from trussdiv import Graph, GraphLoadError, common_neighbors, load_edge_list, stats
from trussdiv.truss import compute_support

from conftest import complete_graph, er_graph, graph_from, octahedron


def _write(tmp_path, name, lines):
    p = tmp_path / name
    p.write_text("\n".join(lines) + "\n")
    return p


def test_load_triangle(tmp_path):
    g = load_edge_list(_write(tmp_path, "t.txt", ["0 1", "1 2", "2 0"]))
    assert (g.n, g.m) == (3, 3)


def test_load_drops_self_loops_and_duplicates(tmp_path):
    g = load_edge_list(_write(tmp_path, "d.txt", ["0 0", "0 1", "1 0"]))
    assert (g.n, g.m) == (2, 1)
    assert g.load_summary.self_loops == 1
    assert g.load_summary.duplicate_edges == 1


def test_load_fig1_ego(fig1_ego):
    # 6 edges per clique x2 + 2 bridges + 12 octahedron edges
    assert (fig1_ego.n, fig1_ego.m) == (14, 26)


def test_load_fig1_full(fig1_full):
    assert (fig1_full.n, fig1_full.m) == (15, 40)


def test_load_missing_file(tmp_path):
    with pytest.raises(GraphLoadError):
        load_edge_list(tmp_path / "nope.txt")


def test_load_malformed_reports_line_number(tmp_path):
    p = _write(tmp_path, "bad.txt", ["0 1", "# fine", "1 x"])
    with pytest.raises(GraphLoadError, match=r":3:"):
        load_edge_list(p)


def test_load_empty_graph(tmp_path):
    g = load_edge_list(_write(tmp_path, "e.txt", ["# nothing here"]))
    assert (g.n, g.m) == (0, 0)


def test_loader_comments_and_blank_lines(tmp_path):
    g = load_edge_list(_write(tmp_path, "c.txt", ["# c", "", "3 7", "7 9"]))
    assert (g.n, g.m) == (3, 2)
    assert list(g.ext_ids) == [3, 7, 9]


def test_external_ids_remap_dense_and_ascending(tmp_path):
    g = load_edge_list(_write(tmp_path, "ids.txt", ["100 5", "5 42"]))
    assert list(g.ext_ids) == [5, 42, 100]
    assert g.to_internal(42) == 1
    with pytest.raises(ValueError):
        g.to_internal(6)


def test_common_neighbors_triangle():
    g = complete_graph(3)
    assert list(common_neighbors(g, 0, 1)) == [2]


def test_common_neighbors_fig1(fig1_ego):
    assert list(common_neighbors(fig1_ego, 2, 5)) == [4]     # (x2,y1) -> x4
    assert list(common_neighbors(fig1_ego, 1, 2)) == [3, 4]  # (x1,x2) -> x3,x4


def test_common_neighbors_rejects_bad_args():
    g = complete_graph(3)
    with pytest.raises(ValueError):
        common_neighbors(g, 0, 0)
    with pytest.raises(ValueError):
        common_neighbors(g, 0, 99)


def test_stats_examples():
    assert stats(complete_graph(3)).triangle_count == 1
    assert stats(complete_graph(4)).triangle_count == 4
    assert stats(octahedron()).triangle_count == 8


def test_stats_octahedron_brute_force():
    g = octahedron()
    adj = {int(v): set() for v in g.ext_ids}
    for u, v in g.edge_list_external():
        adj[int(u)].add(int(v))
        adj[int(v)].add(int(u))
    count = sum(1 for a in range(6) for b in range(a + 1, 6) for c in range(b + 1, 6)
                if b in adj[a] and c in adj[a] and c in adj[b])
    assert stats(g).triangle_count == count == 8


def test_roundtrip_write_reload(tmp_path, fig1_full):
    out = tmp_path / "copy.txt"
    fig1_full.write_edge_list(out)
    g2 = load_edge_list(out)
    assert np.array_equal(g2.edge_list_external(), fig1_full.edge_list_external())
    assert np.array_equal(g2.ext_ids, fig1_full.ext_ids)


def test_roundtrip_random_graphs():
    for seed in range(5):
        g = er_graph(30, 0.3, seed)
        g2 = Graph(g.edge_list_external())
        assert np.array_equal(g2.edge_list_external(), g.edge_list_external())


def test_common_neighbors_matches_support():
    # |N(u) & N(v)| equals edge support for every edge, vs a brute triple scan
    for seed in range(6):
        g = er_graph(40, 0.3, seed + 50)
        sup = compute_support(g).as_dict()
        for (u, v), s in sup.items():
            assert len(common_neighbors(g, u, v)) == s


def test_adjacency_invariants():
    g = er_graph(50, 0.2, 3)
    degs = np.diff(g.indptr)
    assert degs.sum() == 2 * g.m
    for v in range(g.n):
        row = g.neighbors(v)
        assert np.all(np.diff(row) > 0)       # strictly ascending
        assert v not in row                    # no self loops
        for u in row:
            assert g.has_edge(int(u), v)       # symmetric


def test_isolated_vertices_preserved_via_ext_vertices():
    g = graph_from([(0, 1)], n=4)
    assert g.n == 4
    assert g.degree(3) == 0
