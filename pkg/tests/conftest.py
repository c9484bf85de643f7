import numpy as np
import pytest

from trussdiv import Graph, fixture_path, load_edge_list
from trussdiv import _kernels


@pytest.fixture(scope="session", autouse=True)
def _warm_kernels():
    # compile everything up front so timed tests measure algorithms, not JIT
    _kernels.warmup()


@pytest.fixture(scope="session")
def fig1_ego():
    return load_edge_list(fixture_path("fig1_ego.txt"))


@pytest.fixture(scope="session")
def fig1_full():
    return load_edge_list(fixture_path("fig1_full.txt"))


def graph_from(edges, n=None):
    verts = np.arange(n) if n is not None else None
    return Graph(np.asarray(edges, dtype=np.int64), ext_vertices=verts)


def complete_graph(n):
    return graph_from([(i, j) for i in range(n) for j in range(i + 1, n)])


def octahedron():
    # antipodal pairs (0,3), (1,4), (2,5)
    anti = {0: 3, 1: 4, 2: 5, 3: 0, 4: 1, 5: 2}
    return graph_from([(i, j) for i in range(6) for j in range(i + 1, 6)
                       if anti[i] != j])


def path_graph(n):
    return graph_from([(i, i + 1) for i in range(n - 1)])


def star_graph(n_leaves):
    return graph_from([(0, i) for i in range(1, n_leaves + 1)])


def er_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    iu, iv = np.triu_indices(n, 1)
    mask = rng.random(iu.size) < p
    edges = np.stack([iu[mask], iv[mask]], axis=1)
    return Graph(edges.astype(np.int64), ext_vertices=np.arange(n))


def small_corpus():
    """Named hand-checkable graphs used across the unit tests."""
    tri_pendant = graph_from([(0, 1), (1, 2), (0, 2), (2, 3)])
    two_k4_bridge = graph_from(
        [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
         (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7), (3, 4)])
    return {
        "triangle": complete_graph(3),
        "k4": complete_graph(4),
        "k5": complete_graph(5),
        "octahedron": octahedron(),
        "path3": path_graph(3),
        "star6": star_graph(6),
        "tri_pendant": tri_pendant,
        "two_k4_bridge": two_k4_bridge,
    }


def er_grid(n_seeds=12, max_n=60, seeds_from=0):
    """A small ER sample for unit tests; the acceptance suite runs the full
    200-graph grid itself."""
    out = []
    for seed in range(seeds_from, seeds_from + n_seeds):
        rng = np.random.default_rng(seed + 1000)
        n = int(rng.integers(5, max_n + 1))
        for p in (0.1, 0.3, 0.5):
            out.append((f"er-n{n}-p{p}-s{seed}", er_graph(n, p, seed)))
    return out


@pytest.fixture(scope="session")
def unit_grid():
    graphs = er_grid(n_seeds=8)
    graphs += [(name, g) for name, g in small_corpus().items()]
    return graphs
