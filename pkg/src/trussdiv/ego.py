"""Ego-network extraction: one vertex at a time, or all at once from a single
global triangle listing."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import MemoryCapExceeded
from .graph import Graph

DEFAULT_MEM_CAP_MB = 2048.0
_BYTES_PER_EGO_EDGE = 12  # two int32 endpoints plus an int32 trussness later


def _mem_cap_mb(explicit: float | None) -> float:
    if explicit is not None:
        return explicit
    env = os.environ.get("TRUSSDIV_MEM_CAP_MB")
    return float(env) if env else DEFAULT_MEM_CAP_MB


@dataclass
class EgoNetwork:
    """Induced subgraph on N(v): local ids are positions in v's (ascending)
    adjacency row; the center and its incident edges are excluded."""

    center: int                      # external id
    members: np.ndarray              # external ids of N(v), ascending
    edges_a: np.ndarray              # local endpoint (smaller)
    edges_b: np.ndarray              # local endpoint (larger)

    @property
    def L(self) -> int:
        return int(self.members.size)

    @property
    def m_v(self) -> int:
        return int(self.edges_a.size)

    def edge_list_external(self) -> np.ndarray:
        a = self.members[self.edges_a]
        b = self.members[self.edges_b]
        return np.stack([np.minimum(a, b), np.maximum(a, b)], axis=1)

    def edge_set(self) -> set[tuple[int, int]]:
        return {(int(u), int(v)) for u, v in self.edge_list_external()}

    def to_graph(self) -> Graph:
        """The ego as a standalone Graph keeping isolated members."""
        return Graph(self.edge_list_external().astype(np.int64),
                     ext_vertices=self.members.astype(np.int64))


def extract_ego(g: Graph, v: int) -> EgoNetwork:
    """Build G_N(v) by intersecting v's row with each neighbor's row; each
    triangle through v contributes exactly one local edge."""
    vi = g.to_internal(v)
    mark = np.zeros(g.n, dtype=np.int64)
    c = _kernels.ego_count_one(g.indptr, g.indices, vi, mark)
    ea = np.empty(c, dtype=np.int32)
    eb = np.empty(c, dtype=np.int32)
    _kernels.ego_fill_one(g.indptr, g.indices, vi, mark, ea, eb, 0)
    members = g.to_external(g.neighbors(vi)).astype(np.int64)
    return EgoNetwork(int(v), members, ea, eb)


@dataclass
class EgoCollection:
    """All ego-networks, stored as one CSR over vertices.

    Slices are sorted by (a, b) local pairs; total edge count is 3 times the
    graph's triangle count. Egos can be walked in vertex-id order and each
    released after use.
    """

    graph: Graph
    indptr: np.ndarray
    edges_a: np.ndarray
    edges_b: np.ndarray
    tau: np.ndarray | None = field(default=None)   # filled by decompose()

    @property
    def total_edges(self) -> int:
        return int(self.indptr[-1])

    def ego_edge_counts(self) -> np.ndarray:
        return np.diff(self.indptr)

    def ego(self, v: int) -> EgoNetwork:
        vi = self.graph.to_internal(v)
        lo, hi = int(self.indptr[vi]), int(self.indptr[vi + 1])
        members = self.graph.to_external(self.graph.neighbors(vi)).astype(np.int64)
        return EgoNetwork(int(v), members, self.edges_a[lo:hi], self.edges_b[lo:hi])

    def __iter__(self):
        for v in self.graph.ext_ids:
            yield self.ego(int(v))

    def decompose(self, threads: int = 1) -> np.ndarray:
        """Bitmap truss decomposition of every ego; cached on the collection."""
        if self.tau is None:
            tau = np.zeros(self.total_edges, dtype=np.int32)
            degs = self.graph.degrees.astype(np.int64)
            _run_range_kernel(_kernels.decompose_egos_range, self.graph.n, threads,
                              (self.indptr, self.edges_a, self.edges_b, degs),
                              (tau,))
            self.tau = tau
        return self.tau


def _run_range_kernel(kernel, n, threads, pre_args, post_args):
    """Run kernel(*pre_args, lo, hi, *post_args) over [0, n) in chunks.

    Chunks write to disjoint output slices, so the merge is a no-op and the
    result is identical for any thread count.
    """
    if threads <= 1 or n < 2048:
        kernel(*pre_args, 0, n, *post_args)
        return
    from concurrent.futures import ThreadPoolExecutor

    bounds = np.linspace(0, n, threads * 4 + 1).astype(np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [pool.submit(kernel, *pre_args, int(lo), int(hi), *post_args)
                for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        for f in futs:
            f.result()


def extract_all_egos(g: Graph, mem_cap_mb: float | None = None,
                     _naive: bool = False) -> EgoCollection:
    """All egos from one global triangle listing: for every edge (u, v) and
    every w in N(u) & N(v), (u, v) lands in the ego of w — three corner
    insertions per triangle instead of six per-vertex enumerations.

    Refuses (MemoryCapExceeded) when the 3T materialization would exceed the
    cap (TRUSSDIV_MEM_CAP_MB or the mem_cap_mb argument).
    """
    cap = _mem_cap_mb(mem_cap_mb)
    if g.m == 0:
        empty = np.zeros(g.n + 1, dtype=np.int64)
        return EgoCollection(g, empty, np.empty(0, np.int32), np.empty(0, np.int32))
    _, tri = _kernels.triangle_stats(g.indptr, g.indices, g.arc_eid)
    total = int(tri.sum())
    needed_mb = total * _BYTES_PER_EGO_EDGE / 1e6
    if needed_mb > cap:
        raise MemoryCapExceeded(needed_mb, cap)
    ego_indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(tri, out=ego_indptr[1:])
    if _naive:
        ego_indptr, ego_a, ego_b = _kernels.egos_extract_naive(g.indptr, g.indices)
    else:
        ego_a, ego_b = _kernels.egos_fill_shared(g.indptr, g.indices, g.arc_eid,
                                                 g.edges_u, ego_indptr)
    return EgoCollection(g, ego_indptr, ego_a, ego_b)
