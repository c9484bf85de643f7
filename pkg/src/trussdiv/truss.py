"""Edge support and truss decomposition (global peel and per-ego bitmap peel)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph import Graph


@dataclass
class SupportMap:
    """Per-edge triangle counts; (u, v) pairs are external ids with u < v."""

    edges_u: np.ndarray
    edges_v: np.ndarray
    sup: np.ndarray

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(int(u), int(v)): int(s)
                for u, v, s in zip(self.edges_u, self.edges_v, self.sup)}

    def of(self, u: int, v: int) -> int:
        return self.as_dict()[(min(u, v), max(u, v))]


@dataclass
class TrussMap:
    """Per-edge trussness; (u, v) pairs are external ids with u < v."""

    edges_u: np.ndarray
    edges_v: np.ndarray
    tau: np.ndarray

    _lookup: dict | None = None

    def as_dict(self) -> dict[tuple[int, int], int]:
        if self._lookup is None:
            self._lookup = {(int(u), int(v)): int(t)
                            for u, v, t in zip(self.edges_u, self.edges_v, self.tau)}
        return self._lookup

    def of(self, u: int, v: int) -> int:
        return self.as_dict()[(min(u, v), max(u, v))]

    def vertex_trussness(self, u: int) -> int:
        """Max trussness over incident edges; 0 for an untouched vertex."""
        best = 0
        for (a, b), t in self.as_dict().items():
            if (a == u or b == u) and t > best:
                best = t
        return best

    @property
    def max_tau(self) -> int:
        return int(self.tau.max()) if self.tau.size else 0


def _ext_pairs(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    eu = g.ext_ids[g.edges_u]
    ev = g.ext_ids[g.edges_v]
    return np.minimum(eu, ev), np.maximum(eu, ev)


def compute_support(g: Graph) -> SupportMap:
    """Exact per-edge support via one oriented triangle listing."""
    if g.m == 0:
        return SupportMap(*(np.empty(0, dtype=np.int64),) * 2,
                          sup=np.empty(0, dtype=np.int32))
    sup, _ = _kernels.triangle_stats(g.indptr, g.indices, g.arc_eid)
    eu, ev = _ext_pairs(g)
    return SupportMap(eu, ev, sup)


def truss_decompose(g: Graph, _tie_reverse: bool = False) -> TrussMap:
    """Peel edges in ascending support with a bucket queue (O(1) decrease-key);
    an edge removed while the level is k gets trussness k.

    _tie_reverse flips the order equal-support edges enter the bins; final
    values are independent of that choice.
    """
    if g.m == 0:
        return TrussMap(np.empty(0, dtype=np.int64), np.empty(0, dtype=np.int64),
                        np.empty(0, dtype=np.int32))
    sup, _ = _kernels.triangle_stats(g.indptr, g.indices, g.arc_eid)
    tau = _kernels.truss_peel(g.indptr, g.indices, g.arc_eid,
                              g.edges_u, g.edges_v, sup, _tie_reverse)
    eu, ev = _ext_pairs(g)
    return TrussMap(eu, ev, tau)


def bitmap_truss_decompose(ego) -> TrussMap:
    """Per-ego decomposition where adjacency membership IS the bitmap:
    support = popcount(Bits_u AND Bits_w), removal clears both bits.
    Output matches truss_decompose on the same edge set.
    """
    tau = np.zeros(ego.m_v, dtype=np.int32)
    if ego.m_v:
        ego_indptr = np.array([0, ego.m_v], dtype=np.int64)
        degs = np.array([ego.L], dtype=np.int64)
        _kernels.decompose_egos_range(ego_indptr, ego.edges_a, ego.edges_b,
                                      degs, 0, 1, tau)
    ea = ego.members[ego.edges_a]
    eb = ego.members[ego.edges_b]
    return TrussMap(np.minimum(ea, eb), np.maximum(ea, eb), tau)
