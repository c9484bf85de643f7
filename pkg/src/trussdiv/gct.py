"""GCT index: the TSD forest compressed into supernodes (groups connected by
edges of one shared trussness) and superedges, queried as N_k - M_k."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import _kernels
from .diversity import ScoreRecord, SocialContexts
from .ego import EgoNetwork, extract_all_egos
from .ego import _run_range_kernel
from .errors import IndexFormatError
from .graph import Graph
from .search import TopRResult, pad_records
from .truss import TrussMap

FORMAT = "gct"
VERSION = 1


@dataclass
class GctIndex:
    """Per vertex: supernodes (trussness + member list) and a forest of
    superedges between them, plus cumulative >=k histograms so score queries
    are O(1) per (v, k)."""

    vertex_ext: np.ndarray
    sn_indptr: np.ndarray      # vertex -> supernode rows
    sn_tau: np.ndarray
    snmem_indptr: np.ndarray   # supernode row -> member slice
    members: np.ndarray        # external ids; ascending within a supernode
    se_indptr: np.ndarray      # vertex -> superedge rows
    se_i: np.ndarray           # local supernode positions, i < j
    se_j: np.ndarray
    se_w: np.ndarray
    nh_indptr: np.ndarray      # per-vertex cumulative histograms
    nh: np.ndarray
    mh_indptr: np.ndarray
    mh: np.ndarray

    @property
    def n(self) -> int:
        return int(self.vertex_ext.size)

    def row_of(self, v: int) -> int:
        i = int(np.searchsorted(self.vertex_ext, v))
        if i >= self.n or self.vertex_ext[i] != v:
            raise ValueError(f"unknown vertex id {v}")
        return i

    @property
    def supernode_total(self) -> int:
        return int(self.sn_indptr[-1])

    @property
    def superedge_total(self) -> int:
        return int(self.se_indptr[-1])

    def storage_units(self) -> int:
        """Supernodes + superedges + member entries (test accounting)."""
        return self.supernode_total + self.superedge_total + int(self.snmem_indptr[-1])


def _build_histograms(indptr: np.ndarray, vals: np.ndarray):
    n = indptr.size - 1
    maxs = np.zeros(n, dtype=np.int64)
    _kernels.slice_max(indptr, vals, maxs)
    lens = np.where(np.diff(indptr) > 0, maxs + 2, 0)
    hist_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(lens, out=hist_indptr[1:])
    hist = np.zeros(int(hist_indptr[-1]), dtype=np.int64)
    _kernels.suffix_histograms(indptr, vals, hist_indptr, hist)
    return hist_indptr, hist


def _assemble(vertex_ext, sn_indptr, sn_tau, snmem_indptr, members,
              se_indptr, se_i, se_j, se_w) -> GctIndex:
    nh_indptr, nh = _build_histograms(sn_indptr, sn_tau)
    mh_indptr, mh = _build_histograms(se_indptr, se_w)
    return GctIndex(vertex_ext, sn_indptr, sn_tau.astype(np.int64), snmem_indptr,
                    members, se_indptr, se_i, se_j, se_w.astype(np.int64),
                    nh_indptr, nh, mh_indptr, mh)


def build_gct(g: Graph, threads: int = 1, mem_cap_mb: float | None = None) -> GctIndex:
    """Shared ego extraction, bitmap decomposition, then the supernode merge
    pass per ego."""
    col = extract_all_egos(g, mem_cap_mb=mem_cap_mb)
    tau = col.decompose(threads=threads)
    degs = g.degrees.astype(np.int64)
    n = g.n
    sn_off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(degs, out=sn_off[1:])
    se_caps = np.maximum(degs - 1, 0)
    se_off = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(se_caps, out=se_off[1:])
    sn_total = int(sn_off[-1])
    se_total = int(se_off[-1])
    buf_sn_tau = np.zeros(sn_total, dtype=np.int32)
    buf_sn_len = np.zeros(sn_total, dtype=np.int64)
    buf_mem = np.zeros(sn_total, dtype=np.int32)
    buf_se_a = np.zeros(se_total, dtype=np.int32)
    buf_se_b = np.zeros(se_total, dtype=np.int32)
    buf_se_w = np.zeros(se_total, dtype=np.int32)
    sn_cnt = np.zeros(n, dtype=np.int64)
    se_cnt = np.zeros(n, dtype=np.int64)
    _run_range_kernel(_kernels.gct_build_range, n, threads,
                      (col.indptr, col.edges_a, col.edges_b, tau, degs),
                      (sn_off[:-1], buf_sn_tau, buf_sn_len, sn_cnt,
                       sn_off[:-1], buf_mem, se_off[:-1],
                       buf_se_a, buf_se_b, buf_se_w, se_cnt))

    sn_keep = _prefix_mask(sn_off, degs, sn_cnt)
    sn_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(sn_cnt, out=sn_indptr[1:])
    sn_tau = buf_sn_tau[sn_keep]
    sn_len = buf_sn_len[sn_keep]
    snmem_indptr = np.zeros(int(sn_indptr[-1]) + 1, dtype=np.int64)
    np.cumsum(sn_len, out=snmem_indptr[1:])
    # member entries per vertex = its non-isolated members, emitted grouped
    # per supernode inside each vertex's cap-sized slice
    memcnt = np.zeros(n, dtype=np.int64)
    np.add.at(memcnt, np.repeat(np.arange(n), sn_cnt), sn_len)
    mem_keep = _prefix_mask(sn_off, degs, memcnt)
    members_local = buf_mem[mem_keep]
    # map local member positions to external ids
    rep = np.repeat(np.arange(n, dtype=np.int64), memcnt)
    members = g.to_external(g.indices[g.indptr[rep] + members_local]).astype(np.int64)

    se_keep = _prefix_mask(se_off, se_caps, se_cnt)
    se_indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(se_cnt, out=se_indptr[1:])
    return _assemble(g.ext_ids.astype(np.int64).copy(), sn_indptr, sn_tau,
                     snmem_indptr, members, se_indptr,
                     buf_se_a[se_keep], buf_se_b[se_keep], buf_se_w[se_keep])


def _prefix_mask(off: np.ndarray, caps: np.ndarray, cnt: np.ndarray) -> np.ndarray:
    """Mask selecting the first cnt[v] entries of each cap-sized slice."""
    total = int(off[-1])
    if total == 0:
        return np.zeros(0, dtype=bool)
    return (np.arange(total) - np.repeat(off[:-1], caps)) < np.repeat(cnt, caps)


def build_gct_ego(ego: EgoNetwork, tmap: TrussMap) -> GctIndex:
    """Alg.-8 pass over a single ego-network with an already computed
    trussness map; returns a one-vertex index."""
    tau = np.empty(ego.m_v, dtype=np.int32)
    lookup = tmap.as_dict()
    for i in range(ego.m_v):
        u = int(ego.members[ego.edges_a[i]])
        w = int(ego.members[ego.edges_b[i]])
        key = (min(u, w), max(u, w))
        if key not in lookup:
            raise ValueError(f"trussness map is missing ego edge {key}")
        tau[i] = lookup[key]
    L = ego.L
    ego_indptr = np.array([0, ego.m_v], dtype=np.int64)
    degs = np.array([L], dtype=np.int64)
    buf_sn_tau = np.zeros(L, dtype=np.int32)
    buf_sn_len = np.zeros(L, dtype=np.int64)
    buf_mem = np.zeros(L, dtype=np.int32)
    cap_se = max(L - 1, 0)
    buf_se = [np.zeros(cap_se, dtype=np.int32) for _ in range(3)]
    sn_cnt = np.zeros(1, dtype=np.int64)
    se_cnt = np.zeros(1, dtype=np.int64)
    zero = np.zeros(1, dtype=np.int64)
    _kernels.gct_build_range(ego_indptr, ego.edges_a, ego.edges_b, tau, degs,
                             0, 1, zero, buf_sn_tau, buf_sn_len, sn_cnt,
                             zero, buf_mem, zero, buf_se[0], buf_se[1],
                             buf_se[2], se_cnt)
    nsn, nse = int(sn_cnt[0]), int(se_cnt[0])
    sn_indptr = np.array([0, nsn], dtype=np.int64)
    sn_len = buf_sn_len[:nsn]
    snmem_indptr = np.zeros(nsn + 1, dtype=np.int64)
    np.cumsum(sn_len, out=snmem_indptr[1:])
    members = ego.members[buf_mem[:int(sn_len.sum())]].astype(np.int64)
    se_indptr = np.array([0, nse], dtype=np.int64)
    return _assemble(np.array([ego.center], dtype=np.int64), sn_indptr,
                     buf_sn_tau[:nsn], snmem_indptr, members, se_indptr,
                     buf_se[0][:nse], buf_se[1][:nse], buf_se[2][:nse])


def gct_score(idx: GctIndex, v: int, k: int) -> int:
    """N_k - M_k from the cumulative histograms (O(1) per query)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    row = idx.row_of(v)
    nlo, nhi = int(idx.nh_indptr[row]), int(idx.nh_indptr[row + 1])
    nn = int(idx.nh[nlo + k]) if k < nhi - nlo else 0
    mlo, mhi = int(idx.mh_indptr[row]), int(idx.mh_indptr[row + 1])
    mm = int(idx.mh[mlo + k]) if k < mhi - mlo else 0
    return nn - mm


def gct_contexts(idx: GctIndex, v: int, k: int) -> SocialContexts:
    """Union supernodes of trussness >= k along superedges of weight >= k;
    each component's concatenated member lists form one context."""
    if k < 2:
        raise ValueError("k must be >= 2")
    row = idx.row_of(v)
    slo, shi = int(idx.sn_indptr[row]), int(idx.sn_indptr[row + 1])
    nsn = shi - slo
    keep = [idx.sn_tau[slo + i] >= k for i in range(nsn)]
    parent = list(range(nsn))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    elo, ehi = int(idx.se_indptr[row]), int(idx.se_indptr[row + 1])
    for e in range(elo, ehi):
        if idx.se_w[e] >= k:
            a, b = int(idx.se_i[e]), int(idx.se_j[e])
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[rb] = ra
    groups: dict[int, list[int]] = {}
    for i in range(nsn):
        if keep[i]:
            mlo = int(idx.snmem_indptr[slo + i])
            mhi = int(idx.snmem_indptr[slo + i + 1])
            groups.setdefault(find(i), []).extend(
                int(x) for x in idx.members[mlo:mhi])
    ctx = sorted((sorted(c) for c in groups.values()), key=lambda c: c[0])
    return SocialContexts(int(v), k, ctx)


def gct_topr(idx: GctIndex, r: int, k: int, with_contexts: bool = True) -> TopRResult:
    """Rank every vertex by its O(1) indexed score; only the final r answers
    get their contexts materialized. No score is recomputed from scratch, so
    the reported search space is zero."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if idx.n > 0 and not (1 <= r <= idx.n):
        raise ValueError(f"r must be in [1, n={idx.n}]")
    t0 = time.perf_counter()
    if idx.n == 0:
        return TopRResult([], [], 0, time.perf_counter() - t0, "gct")
    scores = np.zeros(idx.n, dtype=np.int64)
    _kernels.gct_scores_all(idx.nh_indptr, idx.nh, idx.mh_indptr, idx.mh, k, scores)
    pos = np.flatnonzero(scores > 0)
    records: list[ScoreRecord] = []
    if pos.size:
        order = np.lexsort((idx.vertex_ext[pos], -scores[pos]))
        for row in pos[order[:r]]:
            v = int(idx.vertex_ext[row])
            ctx = gct_contexts(idx, v, k) if with_contexts else None
            records.append(ScoreRecord(v, k, int(scores[row]), ctx))
    padding = pad_records(idx.vertex_ext, records, r, k)
    return TopRResult(records, padding, 0, time.perf_counter() - t0, "gct")


# -- serialization -----------------------------------------------------------


def save_gct(idx: GctIndex, path: str | Path) -> None:
    vertices = []
    for row in range(idx.n):
        slo, shi = int(idx.sn_indptr[row]), int(idx.sn_indptr[row + 1])
        supernodes = []
        for i in range(slo, shi):
            mlo, mhi = int(idx.snmem_indptr[i]), int(idx.snmem_indptr[i + 1])
            supernodes.append({"tau": int(idx.sn_tau[i]),
                               "members": [int(x) for x in idx.members[mlo:mhi]]})
        elo, ehi = int(idx.se_indptr[row]), int(idx.se_indptr[row + 1])
        superedges = [[int(idx.se_i[e]), int(idx.se_j[e]), int(idx.se_w[e])]
                      for e in range(elo, ehi)]
        vertices.append({"id": int(idx.vertex_ext[row]),
                         "supernodes": supernodes,
                         "superedges": superedges})
    payload = {"format": FORMAT, "version": VERSION, "vertices": vertices}
    Path(path).write_text(json.dumps(payload, separators=(",", ":")))


def load_gct(path: str | Path) -> GctIndex:
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"cannot read index {path}: {exc}") from exc
    if payload.get("format") != FORMAT or payload.get("version") != VERSION:
        raise IndexFormatError(
            f"expected a {FORMAT!r} v{VERSION} container, got "
            f"{payload.get('format')!r} v{payload.get('version')!r}")
    rows = sorted(payload["vertices"], key=lambda rec: rec["id"])
    n = len(rows)
    vertex_ext = np.array([rec["id"] for rec in rows], dtype=np.int64)
    sn_indptr = np.zeros(n + 1, dtype=np.int64)
    se_indptr = np.zeros(n + 1, dtype=np.int64)
    sn_tau: list[int] = []
    sn_lens: list[int] = []
    members: list[int] = []
    se_rows: list[tuple[int, int, int]] = []
    for i, rec in enumerate(rows):
        sns = rec["supernodes"]
        sn_indptr[i + 1] = sn_indptr[i] + len(sns)
        for sn in sns:
            sn_tau.append(sn["tau"])
            sn_lens.append(len(sn["members"]))
            members.extend(sn["members"])
        ses = rec["superedges"]
        se_indptr[i + 1] = se_indptr[i] + len(ses)
        se_rows.extend((int(a), int(b), int(w)) for a, b, w in ses)
    snmem_indptr = np.zeros(len(sn_lens) + 1, dtype=np.int64)
    np.cumsum(np.asarray(sn_lens, dtype=np.int64), out=snmem_indptr[1:])
    se_arr = (np.array([t[0] for t in se_rows], dtype=np.int32),
              np.array([t[1] for t in se_rows], dtype=np.int32),
              np.array([t[2] for t in se_rows], dtype=np.int32))
    return _assemble(vertex_ext, sn_indptr,
                     np.asarray(sn_tau, dtype=np.int32), snmem_indptr,
                     np.asarray(members, dtype=np.int64), se_indptr, *se_arr)
