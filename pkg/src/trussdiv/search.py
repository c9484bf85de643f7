"""Top-r structural diversity search: the online baseline, graph
sparsification, and the bound-pruned framework with early termination."""

from __future__ import annotations

import hashlib
import heapq
import json
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import _kernels
from .diversity import ScoreRecord, compute_score
from .ego import _run_range_kernel
from .graph import Graph
from .truss import truss_decompose


@dataclass
class TopRResult:
    """Ranked positive-score records plus optional zero-score padding.

    records holds min(r, #vertices with score >= 1) entries in
    (score desc, external id asc) order. When fewer than r vertices have a
    positive score, `padding` carries flagged zero-score vertices so callers
    that want exactly r rows can have them.
    """

    records: list[ScoreRecord]
    padding: list[ScoreRecord] = field(default_factory=list)
    search_space: int = 0
    elapsed: float = 0.0
    algo: str = ""

    def digest(self) -> str:
        payload = json.dumps([[rec.vertex, rec.score] for rec in self.records])
        return hashlib.sha256(payload.encode()).hexdigest()

    def pairs(self) -> list[tuple[int, int]]:
        return [(rec.vertex, rec.score) for rec in self.records]


def _validate_rk(g: Graph, r: int, k: int) -> None:
    if k < 2:
        raise ValueError("k must be >= 2")
    if g.n > 0 and not (1 <= r <= g.n):
        raise ValueError(f"r must be in [1, n={g.n}]")


def pad_records(ext_ids: np.ndarray, records: list[ScoreRecord],
                r: int, k: int) -> list[ScoreRecord]:
    """Zero-score padding, flagged, lowest external ids first."""
    need = r - len(records)
    if need <= 0:
        return []
    taken = {rec.vertex for rec in records}
    out: list[ScoreRecord] = []
    for v in ext_ids:
        if int(v) not in taken:
            out.append(ScoreRecord(int(v), k, 0, padded=True))
            if len(out) == need:
                break
    return out


def _pad(g: Graph, k: int, records: list[ScoreRecord], r: int) -> list[ScoreRecord]:
    return pad_records(g.ext_ids, records, r, k)


def sparsify(g: Graph, k: int) -> Graph:
    """Keep exactly the edges with global trussness >= k+1; such edges are
    the only ones that can appear in any ego-network's k-truss. Vertices
    left isolated are dropped; external ids are preserved."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if g.m == 0:
        return Graph(np.empty((0, 2), dtype=np.int64))
    tm = truss_decompose(g)
    keep = tm.tau >= k + 1
    kept = np.stack([tm.edges_u[keep], tm.edges_v[keep]], axis=1)
    return Graph(kept.astype(np.int64))


def online_search(g: Graph, r: int, k: int, threads: int = 1,
                  with_contexts: bool = True) -> TopRResult:
    """Alg.-3 baseline: compute score(v) for every vertex, keep the top r."""
    _validate_rk(g, r, k)
    t0 = time.perf_counter()
    if g.n == 0:
        return TopRResult([], [], 0, time.perf_counter() - t0, "online")
    scores = np.zeros(g.n, dtype=np.int64)
    _run_range_kernel(_kernels.score_range, g.n, threads,
                      (g.indptr, g.indices, k), (scores,))
    records = _rank_known_scores(g, scores, r, k, with_contexts)
    return TopRResult(records, _pad(g, k, records, r), g.n,
                      time.perf_counter() - t0, "online")


def _rank_known_scores(g: Graph, scores: np.ndarray, r: int, k: int,
                       with_contexts: bool) -> list[ScoreRecord]:
    pos = np.flatnonzero(scores > 0)
    if pos.size == 0:
        return []
    order = np.lexsort((g.ext_ids[pos], -scores[pos]))
    top = pos[order[:r]]
    records = []
    for vi in top:
        v = int(g.ext_ids[vi])
        if with_contexts:
            records.append(compute_score(g, v, k))
        else:
            records.append(ScoreRecord(v, k, int(scores[vi])))
    return records


class _TopSet:
    """Running top-r under the (score desc, external id asc) total order."""

    def __init__(self, r: int):
        self.r = r
        self.heap: list[tuple[int, int]] = []   # (score, -vertex); root = weakest

    def offer(self, vertex: int, score: int) -> None:
        if score <= 0:
            return
        item = (score, -vertex)
        if len(self.heap) < self.r:
            heapq.heappush(self.heap, item)
        elif item > self.heap[0]:
            heapq.heapreplace(self.heap, item)

    @property
    def full(self) -> bool:
        return len(self.heap) >= self.r

    @property
    def min_score(self) -> int:
        return self.heap[0][0]

    def ranked(self) -> list[tuple[int, int]]:
        return [(-nv, s) for s, nv in sorted(self.heap, key=lambda t: (-t[0], -t[1]))]


def run_bound_pruned(candidates_ext: np.ndarray, bounds: np.ndarray, r: int,
                     score_fn: Callable[[int], int]) -> tuple[list[tuple[int, int]], int]:
    """Shared pruning loop: visit candidates in (bound desc, id asc) order,
    stop once the top set is full and the next bound cannot beat (or, on a
    score tie, displace by id) anything in it. Returns ((vertex, score)
    ranked pairs, number of vertices fully scored).

    Candidates with bound 0 are never scored: their score is 0 and
    zero-score vertices are only ever padding.
    """
    order = np.lexsort((candidates_ext, -bounds))
    top = _TopSet(r)
    scored = 0
    for idx in order:
        ub = int(bounds[idx])
        if ub <= 0:
            break
        if top.full and ub < top.min_score:
            break
        v = int(candidates_ext[idx])
        top.offer(v, score_fn(v))
        scored += 1
    return top.ranked(), scored


def bounded_search(g: Graph, r: int, k: int, threads: int = 1,
                   with_contexts: bool = True) -> TopRResult:
    """Sparsify, rank the survivors by the degree/edge bound, score them in
    bound order, and stop early once the bound cannot improve the answer."""
    _validate_rk(g, r, k)
    t0 = time.perf_counter()
    if g.n == 0:
        return TopRResult([], [], 0, time.perf_counter() - t0, "bounded")
    g2 = sparsify(g, k)
    if g2.m == 0:
        records: list[ScoreRecord] = []
        return TopRResult(records, _pad(g, k, records, r), 0,
                          time.perf_counter() - t0, "bounded")
    _, tri = _kernels.triangle_stats(g2.indptr, g2.indices, g2.arc_eid)
    deg = g2.degrees
    kk = k * (k - 1)
    bounds = np.minimum(deg // k, (2 * tri) // kk).astype(np.int64)

    def score_fn(v_ext: int) -> int:
        return compute_score(g2, v_ext, k, with_contexts=False).score

    pairs, scored = run_bound_pruned(g2.ext_ids, bounds, r, score_fn)
    records = _materialize(g2, pairs, k, with_contexts)
    return TopRResult(records, _pad(g, k, records, r), scored,
                      time.perf_counter() - t0, "bounded")


def _materialize(g: Graph, pairs: list[tuple[int, int]], k: int,
                 with_contexts: bool) -> list[ScoreRecord]:
    if not with_contexts:
        return [ScoreRecord(v, k, s) for v, s in pairs]
    out = []
    for v, s in pairs:
        rec = compute_score(g, v, k)
        assert rec.score == s
        out.append(rec)
    return out
