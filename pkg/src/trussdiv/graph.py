"""Immutable undirected simple graph in sorted-adjacency (CSR) form.

All public APIs speak external vertex ids; internally vertices are densely
renumbered 0..n-1 in ascending external-id order so per-vertex state can live
in flat arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import GraphLoadError


@dataclass(frozen=True)
class LoadSummary:
    """What the loader silently dropped while sanitizing the input."""

    self_loops: int = 0
    duplicate_edges: int = 0


@dataclass
class GraphStats:
    n: int
    m: int
    d_max: int
    triangle_count: int
    max_edge_trussness: int | None = None


class Graph:
    """Undirected simple graph; immutable after construction.

    Attributes
    ----------
    n, m        vertex / edge counts
    indptr      CSR row offsets, shape (n+1,)
    indices     neighbor internal ids, ascending within each row, shape (2m,)
    arc_eid     edge id of each CSR arc, shape (2m,)
    edges_u/v   canonical edge list (u < v, internal ids), lex-sorted, shape (m,)
    ext_ids     internal id -> external id, ascending, shape (n,)
    """

    def __init__(self, ext_edges: np.ndarray, ext_vertices: np.ndarray | None = None,
                 summary: LoadSummary | None = None):
        ext_edges = np.asarray(ext_edges, dtype=np.int64).reshape(-1, 2)
        flat = ext_edges.ravel()
        if ext_vertices is not None:
            verts = np.unique(np.asarray(ext_vertices, dtype=np.int64))
        else:
            verts = np.unique(flat)
        n = int(verts.size)

        a = np.searchsorted(verts, ext_edges[:, 0]).astype(np.int64)
        b = np.searchsorted(verts, ext_edges[:, 1]).astype(np.int64)
        lo = np.minimum(a, b)
        hi = np.maximum(a, b)
        keep = lo != hi
        self_loops = int(np.count_nonzero(~keep))
        lo, hi = lo[keep], hi[keep]
        key = lo * n + hi
        key = np.unique(key)
        duplicates = int(lo.size - key.size)
        eu = (key // max(n, 1)).astype(np.int32)
        ev = (key % max(n, 1)).astype(np.int32)
        m = int(eu.size)

        # CSR over both arc directions; stable sort keeps rows ascending by id.
        src = np.concatenate([eu, ev])
        dst = np.concatenate([ev, eu])
        eid = np.concatenate([np.arange(m, dtype=np.int32)] * 2)
        order = np.lexsort((dst, src))
        src, dst, eid = src[order], dst[order], eid[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        np.cumsum(indptr, out=indptr)

        self.n = n
        self.m = m
        self.indptr = indptr
        self.indices = dst.astype(np.int32)
        self.arc_eid = eid
        self.edges_u = eu
        self.edges_v = ev
        self.ext_ids = verts
        self.load_summary = summary if summary is not None else LoadSummary(self_loops, duplicates)
        if summary is None and (self_loops or duplicates):
            self.load_summary = LoadSummary(self_loops, duplicates)
        for arr in (self.indptr, self.indices, self.arc_eid,
                    self.edges_u, self.edges_v, self.ext_ids):
            arr.setflags(write=False)

    # -- id mapping -------------------------------------------------------

    def to_internal(self, ext_id: int) -> int:
        i = int(np.searchsorted(self.ext_ids, ext_id))
        if i >= self.n or self.ext_ids[i] != ext_id:
            raise ValueError(f"unknown vertex id {ext_id}")
        return i

    def to_external(self, internal_id) -> np.ndarray:
        return self.ext_ids[internal_id]

    # -- accessors (internal ids) ------------------------------------------

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors(u)
        i = np.searchsorted(row, v)
        return i < row.size and row[i] == v

    def edge_id(self, u: int, v: int) -> int:
        """Edge id of internal pair (u,v), or -1 if absent."""
        row = self.neighbors(u)
        i = int(np.searchsorted(row, v))
        if i < row.size and row[i] == v:
            return int(self.arc_eid[self.indptr[u] + i])
        return -1

    # -- export -------------------------------------------------------------

    def edge_list_external(self) -> np.ndarray:
        """Canonical (u,v) pairs as external ids, m x 2."""
        out = np.stack([self.ext_ids[self.edges_u], self.ext_ids[self.edges_v]], axis=1)
        return np.sort(out, axis=1)

    def write_edge_list(self, path: str | Path) -> None:
        np.savetxt(path, self.edge_list_external(), fmt="%d")

    def __repr__(self) -> str:  # pragma: no cover
        return f"Graph(n={self.n}, m={self.m})"


def load_edge_list(path: str | Path) -> Graph:
    """Parse a whitespace-separated "u v" edge list file into a Graph.

    Lines starting with '#' are comments; self-loops and duplicate (or
    reversed duplicate) edges are dropped, with counts recorded on the
    returned graph's ``load_summary``. An empty file yields an empty graph.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise GraphLoadError(f"cannot read {p}: {exc}") from exc

    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) < 2:
            raise GraphLoadError(f"{p}:{lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphLoadError(f"{p}:{lineno}: malformed token in {raw!r}") from exc
        if u < 0 or v < 0:
            raise GraphLoadError(f"{p}:{lineno}: negative vertex id in {raw!r}")
        us.append(u)
        vs.append(v)

    if not us:
        return Graph(np.empty((0, 2), dtype=np.int64))
    return Graph(np.stack([np.asarray(us, dtype=np.int64),
                           np.asarray(vs, dtype=np.int64)], axis=1))


def common_neighbors(g: Graph, u: int, v: int) -> np.ndarray:
    """Ascending intersection of two adjacency lists (external ids in/out)."""
    iu, iv = g.to_internal(u), g.to_internal(v)
    if iu == iv:
        raise ValueError("common_neighbors requires two distinct vertices")
    both = np.intersect1d(g.neighbors(iu), g.neighbors(iv), assume_unique=True)
    return g.to_external(both)


def stats(g: Graph, trussmap=None) -> GraphStats:
    """Exact counts; the triangle total comes from one oriented listing."""
    from ._kernels import triangle_stats

    if g.m == 0:
        return GraphStats(g.n, 0, 0 if g.n == 0 else int(g.degrees.max(initial=0)), 0,
                          None if trussmap is None else _tau_max(trussmap))
    sup, tri_per_vertex = triangle_stats(g.indptr, g.indices, g.arc_eid)
    total = int(tri_per_vertex.sum()) // 3
    d_max = int(g.degrees.max())
    return GraphStats(g.n, g.m, d_max, total,
                      None if trussmap is None else _tau_max(trussmap))


def _tau_max(trussmap) -> int:
    return int(trussmap.tau.max()) if trussmap.tau.size else 0
