"""TSD index: per-vertex maximum-weight spanning forest of the ego-network,
edge weights being local trussness. Queries run in time linear in |N(v)|."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .diversity import ScoreRecord, SocialContexts
from .ego import _run_range_kernel, extract_all_egos
from .errors import IndexFormatError
from .graph import Graph
from .search import TopRResult, pad_records, run_bound_pruned

FORMAT = "tsd"
VERSION = 1


@dataclass
class TsdIndex:
    """Per vertex: the member list of N(v) and the forest edges (local
    endpoint pairs plus weight), stored grouped descending by weight."""

    vertex_ext: np.ndarray       # ascending external ids
    members_indptr: np.ndarray
    members: np.ndarray          # external ids, ascending per slice
    forest_indptr: np.ndarray
    fa: np.ndarray               # local endpoints into the member slice
    fb: np.ndarray
    fw: np.ndarray               # weights, descending per slice

    @property
    def n(self) -> int:
        return int(self.vertex_ext.size)

    @property
    def forest_edge_total(self) -> int:
        return int(self.forest_indptr[-1])

    def row_of(self, v: int) -> int:
        i = int(np.searchsorted(self.vertex_ext, v))
        if i >= self.n or self.vertex_ext[i] != v:
            raise ValueError(f"unknown vertex id {v}")
        return i

    def storage_units(self) -> int:
        """Members plus forest edges, the index-size accounting used in tests."""
        return int(self.members_indptr[-1]) + self.forest_edge_total

    # -- queries ---------------------------------------------------------

    def _kept_prefix(self, row: int, k: int) -> tuple[int, int]:
        lo, hi = int(self.forest_indptr[row]), int(self.forest_indptr[row + 1])
        w = self.fw[lo:hi]
        # first position with weight < k in the descending slice
        a, b = 0, w.size
        while a < b:
            mid = (a + b) >> 1
            if w[mid] >= k:
                a = mid + 1
            else:
                b = mid
        return lo, lo + a

    def count_ge(self, row: int, k: int) -> int:
        lo, hi = self._kept_prefix(row, k)
        return hi - lo


def build_tsd(g: Graph, threads: int = 1, mem_cap_mb: float | None = None) -> TsdIndex:
    """Decompose every ego (shared extraction + bitmap peel), then run a
    Kruskal pass per ego over descending-weight buckets. No sparsification:
    the index must answer every k."""
    col = extract_all_egos(g, mem_cap_mb=mem_cap_mb)
    tau = col.decompose(threads=threads)
    degs = g.degrees.astype(np.int64)
    m_v = col.ego_edge_counts()
    caps = np.minimum(m_v, np.maximum(degs - 1, 0))
    out_off = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(caps, out=out_off[1:])
    total = int(out_off[-1])
    buf_a = np.empty(total, dtype=np.int32)
    buf_b = np.empty(total, dtype=np.int32)
    buf_w = np.empty(total, dtype=np.int32)
    cnt = np.zeros(g.n, dtype=np.int64)
    _run_range_kernel(_kernels.tsd_build_range, g.n, threads,
                      (col.indptr, col.edges_a, col.edges_b, tau, degs),
                      (out_off[:-1], buf_a, buf_b, buf_w, cnt))
    keep = np.arange(total) - np.repeat(out_off[:-1], caps) < np.repeat(cnt, caps)
    forest_indptr = np.zeros(g.n + 1, dtype=np.int64)
    np.cumsum(cnt, out=forest_indptr[1:])
    members_indptr = g.indptr.copy()
    members = g.to_external(g.indices).astype(np.int64)
    return TsdIndex(g.ext_ids.astype(np.int64).copy(), members_indptr, members,
                    forest_indptr, buf_a[keep], buf_b[keep], buf_w[keep])


def tsd_score(idx: TsdIndex, v: int, k: int, with_contexts: bool = True) -> ScoreRecord:
    """Components of the weight->=k prefix of the forest; every component with
    at least one edge is a social context."""
    if k < 2:
        raise ValueError("k must be >= 2")
    row = idx.row_of(v)
    lo, hi = idx._kept_prefix(row, k)
    mlo, mhi = int(idx.members_indptr[row]), int(idx.members_indptr[row + 1])
    L = mhi - mlo
    labels = np.empty(L, dtype=np.int32)
    score = int(_kernels.forest_components(L, idx.fa[lo:hi], idx.fb[lo:hi],
                                           hi - lo, labels))
    if not with_contexts:
        return ScoreRecord(int(v), k, score)
    members = idx.members[mlo:mhi]
    groups: dict[int, list[int]] = {}
    for i, root in enumerate(labels):
        if root >= 0:
            groups.setdefault(int(root), []).append(int(members[i]))
    ctx = sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])
    return ScoreRecord(int(v), k, score, SocialContexts(int(v), k, ctx))


def tsd_upper_bound(idx: TsdIndex, v: int, k: int) -> int:
    """floor(#forest edges of weight >= k / (k-1)): a context must contribute
    at least k-1 such tree edges."""
    if k < 2:
        raise ValueError("k must be >= 2")
    return idx.count_ge(idx.row_of(v), k) // (k - 1)


def tsd_topr(idx: TsdIndex, r: int, k: int, with_contexts: bool = True) -> TopRResult:
    """Bound-pruned top-r over the index: rank by the forest bound, score via
    tsd_score, stop early exactly as the online framework does."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if idx.n > 0 and not (1 <= r <= idx.n):
        raise ValueError(f"r must be in [1, n={idx.n}]")
    t0 = time.perf_counter()
    if idx.n == 0:
        return TopRResult([], [], 0, time.perf_counter() - t0, "tsd")
    counts = np.zeros(idx.n, dtype=np.int64)
    _kernels.count_ge_per_vertex(idx.forest_indptr, idx.fw, k, counts)
    bounds = counts // (k - 1)

    def score_fn(v_ext: int) -> int:
        return tsd_score(idx, v_ext, k, with_contexts=False).score

    pairs, scored = run_bound_pruned(idx.vertex_ext, bounds, r, score_fn)
    if with_contexts:
        records = [tsd_score(idx, v, k) for v, _ in pairs]
    else:
        records = [ScoreRecord(v, k, s) for v, s in pairs]
    padding = pad_records(idx.vertex_ext, records, r, k)
    return TopRResult(records, padding, scored, time.perf_counter() - t0, "tsd")


# -- serialization -----------------------------------------------------------


def save_tsd(idx: TsdIndex, path: str | Path) -> None:
    vertices = []
    for row in range(idx.n):
        mlo, mhi = int(idx.members_indptr[row]), int(idx.members_indptr[row + 1])
        flo, fhi = int(idx.forest_indptr[row]), int(idx.forest_indptr[row + 1])
        members = idx.members[mlo:mhi]
        vertices.append({
            "id": int(idx.vertex_ext[row]),
            "members": [int(x) for x in members],
            "edges": [[int(members[a]), int(members[b]), int(w)]
                      for a, b, w in zip(idx.fa[flo:fhi], idx.fb[flo:fhi],
                                         idx.fw[flo:fhi])],
        })
    payload = {"format": FORMAT, "version": VERSION, "vertices": vertices}
    Path(path).write_text(json.dumps(payload, separators=(",", ":")))


def load_tsd(path: str | Path) -> TsdIndex:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"cannot read index {path}: {exc}") from exc
    if payload.get("format") != FORMAT or payload.get("version") != VERSION:
        raise IndexFormatError(
            f"expected a {FORMAT!r} v{VERSION} container, got "
            f"{payload.get('format')!r} v{payload.get('version')!r}")
    rows = sorted(payload["vertices"], key=lambda rec: rec["id"])
    vertex_ext = np.array([rec["id"] for rec in rows], dtype=np.int64)
    members_indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    forest_indptr = np.zeros(len(rows) + 1, dtype=np.int64)
    members: list[int] = []
    fa: list[int] = []
    fb: list[int] = []
    fw: list[int] = []
    for i, rec in enumerate(rows):
        mem = rec["members"]
        lookup = {x: j for j, x in enumerate(mem)}
        members_indptr[i + 1] = members_indptr[i] + len(mem)
        members.extend(mem)
        edges = sorted(rec["edges"], key=lambda e: (-e[2], lookup[e[0]], lookup[e[1]]))
        forest_indptr[i + 1] = forest_indptr[i] + len(edges)
        for u, w, weight in edges:
            a, b = lookup[u], lookup[w]
            if a > b:
                a, b = b, a
            fa.append(a)
            fb.append(b)
            fw.append(weight)
    return TsdIndex(vertex_ext, members_indptr,
                    np.asarray(members, dtype=np.int64),
                    forest_indptr,
                    np.asarray(fa, dtype=np.int32),
                    np.asarray(fb, dtype=np.int32),
                    np.asarray(fw, dtype=np.int32))
