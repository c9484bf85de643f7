"""Structural diversity scores straight from an ego-network, and the
degree/edge upper bound used for pruning."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graph import Graph


@dataclass
class SocialContexts:
    """Disjoint member sets, each one connected component of the k-truss of
    the center's ego-network. Members sorted ascending; contexts sorted by
    smallest member."""

    vertex: int
    k: int
    contexts: list[list[int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.contexts)

    def as_sets(self) -> list[frozenset[int]]:
        return [frozenset(c) for c in self.contexts]


@dataclass
class ScoreRecord:
    vertex: int
    k: int
    score: int
    contexts: SocialContexts | None = None
    padded: bool = False   # admitted only to pad a short top-r result


def _contexts_from_labels(members: np.ndarray, labels: np.ndarray,
                          vertex: int, k: int) -> SocialContexts:
    groups: dict[int, list[int]] = {}
    for i, root in enumerate(labels):
        if root >= 0:
            groups.setdefault(int(root), []).append(int(members[i]))
    ctx = sorted((sorted(g) for g in groups.values()), key=lambda c: c[0])
    return SocialContexts(vertex, k, ctx)


def compute_score(g: Graph, v: int, k: int,
                  with_contexts: bool = True) -> ScoreRecord:
    """Extract the ego-network of v, truss-decompose it, drop edges below k,
    and count the surviving connected components."""
    if k < 2:
        raise ValueError("k must be >= 2")
    vi = g.to_internal(v)
    mark = np.zeros(g.n, dtype=np.int64)
    score, labels, _, _, _ = _kernels.score_one(g.indptr, g.indices, vi, k, mark)
    if not with_contexts:
        return ScoreRecord(int(v), k, int(score))
    members = g.to_external(g.neighbors(vi))
    return ScoreRecord(int(v), k, int(score),
                       _contexts_from_labels(members, labels, int(v), k))


def ego_edge_count(g: Graph, v: int) -> int:
    """m_v: the number of edges in G_N(v) (= triangles of G through v)."""
    vi = g.to_internal(v)
    mark = np.zeros(g.n, dtype=np.int64)
    return int(_kernels.ego_count_one(g.indptr, g.indices, vi, mark))


def upper_bound_score(g: Graph, v: int, k: int, m_v: int | None = None) -> int:
    """min(floor(d(v)/k), floor(2 m_v / (k (k-1)))): no ego-network can hold
    more contexts, since the smallest one is a k-clique."""
    if k < 2:
        raise ValueError("k must be >= 2")
    vi = g.to_internal(v)
    d = g.degree(vi)
    if d < k:
        return 0
    if m_v is None:
        m_v = ego_edge_count(g, v)
    return min(d // k, (2 * m_v) // (k * (k - 1)))
