import numpy as np
import pytest

from trussdiv import Graph
from trussdiv.diversity import compute_score
from trussdiv.ego import extract_ego
from trussdiv.gct import (GctIndex, build_gct, build_gct_ego, gct_contexts,
                          gct_score, gct_topr, load_gct, save_gct)
from trussdiv.search import online_search
from trussdiv.truss import TrussMap, bitmap_truss_decompose, truss_decompose
from trussdiv.tsd import build_tsd

from conftest import complete_graph, er_graph, graph_from


def vertex_entry(idx, v):
    row = idx.row_of(v)
    slo, shi = int(idx.sn_indptr[row]), int(idx.sn_indptr[row + 1])
    supernodes = []
    for i in range(slo, shi):
        mlo, mhi = int(idx.snmem_indptr[i]), int(idx.snmem_indptr[i + 1])
        supernodes.append((int(idx.sn_tau[i]),
                           [int(x) for x in idx.members[mlo:mhi]]))
    elo, ehi = int(idx.se_indptr[row]), int(idx.se_indptr[row + 1])
    superedges = [(int(idx.se_i[e]), int(idx.se_j[e]), int(idx.se_w[e]))
                  for e in range(elo, ehi)]
    return supernodes, superedges


def check_invariants(idx: GctIndex, g: Graph, tsd=None):
    """Structural invariants asserted on every built index."""
    for v in g.ext_ids:
        v = int(v)
        supernodes, superedges = vertex_entry(idx, v)
        ego = extract_ego(g, v)
        non_isolated = sorted({int(ego.members[a]) for a in ego.edges_a}
                              | {int(ego.members[b]) for b in ego.edges_b})
        # member lists partition the non-isolated members; tau(S) >= 2
        all_members = sorted(x for _, mem in supernodes for x in mem)
        assert all_members == non_isolated, v
        assert all(t >= 2 for t, _ in supernodes), v
        assert len(supernodes) <= ego.L
        # superedges: a forest, weight <= min endpoint trussness and
        # strictly below at least one endpoint (equal to both would have merged)
        parent = list(range(len(supernodes)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, w in superedges:
            ti, tj = supernodes[i][0], supernodes[j][0]
            assert w <= min(ti, tj), (v, i, j, w)
            assert w < max(ti, tj), (v, i, j, w)
            ri, rj = find(i), find(j)
            assert ri != rj, (v, "superedge cycle")
            parent[rj] = ri
        if tsd is not None:
            row = tsd.row_of(v)
            tsd_edges = int(tsd.forest_indptr[row + 1] - tsd.forest_indptr[row])
            assert len(superedges) <= tsd_edges, v


def test_triangle_graph():
    idx = build_gct(complete_graph(3))
    for v in range(3):
        sns, ses = vertex_entry(idx, v)
        assert len(sns) == 1 and sns[0][0] == 2 and len(sns[0][1]) == 2
        assert ses == []


def test_fig1_center_structure(fig1_full):
    idx = build_gct(fig1_full)
    sns, ses = vertex_entry(idx, 0)
    assert [t for t, _ in sns] == [4, 4, 4]
    assert [mem for _, mem in sns] == [[1, 2, 3, 4], [5, 6, 7, 8],
                                       [9, 10, 11, 12, 13, 14]]
    # one superedge carrying the bridge trussness between the two cliques
    assert len(ses) == 1
    i, j, w = ses[0]
    assert w == 3 and {tuple(sorted(sns[i][1]))[0], tuple(sorted(sns[j][1]))[0]} == {1, 5}


def test_empty_ego_vertex():
    g = graph_from([(0, 1), (0, 2)])
    idx = build_gct(g)
    sns, ses = vertex_entry(idx, 0)
    assert sns == [] and ses == []


def test_build_gct_ego_k4():
    g = complete_graph(5)  # ego of any vertex is a K4
    ego = extract_ego(g, 0)
    idx = build_gct_ego(ego, bitmap_truss_decompose(ego))
    sns, ses = vertex_entry(idx, 0)
    assert len(sns) == 1 and sns[0][0] == 4 and sorted(sns[0][1]) == [1, 2, 3, 4]
    assert ses == []


def test_build_gct_ego_fig1(fig1_full):
    ego = extract_ego(fig1_full, 0)
    idx = build_gct_ego(ego, bitmap_truss_decompose(ego))
    full_idx = build_gct(fig1_full)
    assert vertex_entry(idx, 0) == vertex_entry(full_idx, 0)


def test_build_gct_ego_two_triangles():
    g = graph_from([(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6),
                    (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6)])
    ego = extract_ego(g, 0)
    idx = build_gct_ego(ego, bitmap_truss_decompose(ego))
    sns, ses = vertex_entry(idx, 0)
    assert [t for t, _ in sns] == [3, 3] and ses == []


def test_build_gct_ego_rejects_incomplete_map(fig1_full):
    ego = extract_ego(fig1_full, 0)
    empty = TrussMap(np.empty(0, np.int64), np.empty(0, np.int64),
                     np.empty(0, np.int32))
    with pytest.raises(ValueError):
        build_gct_ego(ego, empty)


def test_score_examples(fig1_full):
    idx = build_gct(fig1_full)
    assert gct_score(idx, 0, 4) == 3    # N=3, M=0
    assert gct_score(idx, 0, 3) == 2    # N=3, M=1
    assert gct_score(idx, 0, 5) == 0
    with pytest.raises(ValueError):
        gct_score(idx, 12345, 3)


def test_contexts_examples(fig1_full):
    idx = build_gct(fig1_full)
    assert gct_contexts(idx, 0, 4).contexts == [[1, 2, 3, 4], [5, 6, 7, 8],
                                                [9, 10, 11, 12, 13, 14]]
    assert gct_contexts(idx, 0, 3).contexts == [[1, 2, 3, 4, 5, 6, 7, 8],
                                                [9, 10, 11, 12, 13, 14]]
    assert gct_contexts(idx, 0, 9).contexts == []


def test_superedge_weight_can_touch_min_endpoint():
    """A K5 with a two-edge pendant: the pendant's supernode has trussness 3
    and its superedge weight is also 3 (the merge needs equality with BOTH
    endpoints). Lemma-2 counting still holds."""
    g = complete_graph(5)
    edges = [(int(u), int(v)) for u, v in g.edge_list_external()]
    edges += [(5, 0), (5, 1)]
    g = graph_from(edges)
    # look from a fresh center adjacent to everything
    edges += [(9, x) for x in range(6)]
    g = graph_from(edges)
    idx = build_gct(g)
    sns, ses = vertex_entry(idx, 9)
    taus = sorted(t for t, _ in sns)
    assert taus == [3, 5]
    assert len(ses) == 1 and ses[0][2] == 3        # w == min endpoint trussness
    assert gct_score(idx, 9, 3) == 1 == compute_score(g, 9, 3).score
    assert gct_score(idx, 9, 4) == 1 == compute_score(g, 9, 4).score
    check_invariants(idx, g)


def test_lemma2_grid(unit_grid):
    for name, g in unit_grid:
        idx = build_gct(g)
        tau_star = truss_decompose(g).max_tau
        for v in g.ext_ids:
            for k in range(2, tau_star + 2):
                assert gct_score(idx, int(v), k) == \
                    compute_score(g, int(v), k, with_contexts=False).score, (name, v, k)


def test_contexts_match_direct_computation(unit_grid):
    for name, g in unit_grid[:12]:
        idx = build_gct(g)
        for v in g.ext_ids:
            for k in (2, 3, 4, 5):
                assert gct_contexts(idx, int(v), k).contexts == \
                    compute_score(g, int(v), k).contexts.contexts, (name, v, k)


def test_forest_counting_identity(unit_grid):
    """Within each (v, k) slice: kept supernodes - kept superedges = number
    of components of the kept superforest."""
    for name, g in unit_grid[:12]:
        idx = build_gct(g)
        for v in g.ext_ids:
            sns, ses = vertex_entry(idx, int(v))
            for k in range(2, 8):
                keep = [i for i, (t, _) in enumerate(sns) if t >= k]
                kept_edges = [(i, j) for i, j, w in ses if w >= k]
                parent = {i: i for i in keep}

                def find(x):
                    while parent[x] != x:
                        parent[x] = parent[parent[x]]
                        x = parent[x]
                    return x

                comps = len(keep)
                for i, j in kept_edges:
                    ri, rj = find(i), find(j)
                    if ri != rj:
                        parent[rj] = ri
                        comps -= 1
                assert len(keep) - len(kept_edges) == comps == \
                    gct_score(idx, int(v), k), (name, v, k)


def test_invariants_on_grid(unit_grid):
    for name, g in unit_grid[:12]:
        check_invariants(build_gct(g), g, tsd=build_tsd(g))


def test_compression_vs_tsd(unit_grid, fig1_full):
    for name, g in unit_grid + [("fig1_full", fig1_full)]:
        tsd = build_tsd(g)
        gct = build_gct(g)
        assert gct.storage_units() <= tsd.storage_units(), name


def test_topr(fig1_full, unit_grid):
    idx = build_gct(fig1_full)
    res = gct_topr(idx, 1, 4)
    assert res.pairs() == [(0, 3)]
    assert res.records[0].contexts.contexts == [[1, 2, 3, 4], [5, 6, 7, 8],
                                                [9, 10, 11, 12, 13, 14]]
    for name, g in unit_grid[:10]:
        gidx = build_gct(g)
        for k in (2, 3, 4):
            a = gct_topr(gidx, g.n, k, with_contexts=False)
            b = online_search(g, g.n, k, with_contexts=False)
            assert a.pairs() == b.pairs(), (name, k)


def test_roundtrip(tmp_path, fig1_full):
    for g in (fig1_full, er_graph(40, 0.3, 17)):
        idx = build_gct(g)
        path = tmp_path / "g.json"
        save_gct(idx, path)
        idx2 = load_gct(path)
        for v in g.ext_ids:
            for k in range(2, 7):
                assert gct_score(idx, int(v), k) == gct_score(idx2, int(v), k)
                assert gct_contexts(idx, int(v), k).contexts == \
                    gct_contexts(idx2, int(v), k).contexts
        save_gct(idx2, tmp_path / "g2.json")
        assert (tmp_path / "g.json").read_text() == (tmp_path / "g2.json").read_text()


def test_load_rejects_wrong_container(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"format":"tsd","version":1,"vertices":[]}')
    from trussdiv import IndexFormatError
    with pytest.raises(IndexFormatError):
        load_gct(p)
