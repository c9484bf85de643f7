"""Seeded power-law graph generator for benchmarks and scaling tests.

Growth model: each new vertex attaches with a fixed number of edges; most
picks copy both endpoints of an existing edge (closing a triangle with the
new vertex), the rest land on a random edge endpoint (degree-proportional).
Produces heavy-tailed degrees, plenty of triangles, and m close to
m_per * n.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .graph import Graph


@njit(cache=True)
def _grow(n, m_per, seed):
    np.random.seed(seed)
    m0 = m_per + 1
    eu = np.empty(m_per * n + m0 * m0, dtype=np.int32)
    ev = np.empty(m_per * n + m0 * m0, dtype=np.int32)
    cnt = 0
    for i in range(m0):
        for j in range(i + 1, m0):
            eu[cnt] = i
            ev[cnt] = j
            cnt += 1
    chosen = np.empty(m_per, dtype=np.int64)
    for v in range(m0, n):
        nsel = 0
        # two edge-copy picks: adopt both endpoints of an existing edge
        for _ in range(2):
            for _try in range(8):
                e = np.random.randint(0, cnt)
                a = eu[e]
                b = ev[e]
                fresh = True
                for q in range(nsel):
                    if chosen[q] == a or chosen[q] == b:
                        fresh = False
                        break
                if fresh:
                    chosen[nsel] = a
                    chosen[nsel + 1] = b
                    nsel += 2
                    break
        # endpoint picks (preferential) until m_per stubs are placed
        while nsel < m_per:
            placed = False
            for _try in range(16):
                e = np.random.randint(0, cnt)
                x = eu[e] if np.random.randint(0, 2) == 0 else ev[e]
                fresh = True
                for q in range(nsel):
                    if chosen[q] == x:
                        fresh = False
                        break
                if fresh:
                    chosen[nsel] = x
                    nsel += 1
                    placed = True
                    break
            if not placed:
                break
        for q in range(nsel):
            eu[cnt] = v
            ev[cnt] = chosen[q]
            cnt += 1
    return eu[:cnt], ev[:cnt]


def powerlaw_graph(n: int, m_per: int = 5, seed: int = 0) -> Graph:
    """Power-law graph with roughly m_per * n edges; deterministic per seed."""
    if n < m_per + 1:
        raise ValueError(f"need n >= {m_per + 1}")
    eu, ev = _grow(n, m_per, seed)
    edges = np.stack([eu.astype(np.int64), ev.astype(np.int64)], axis=1)
    return Graph(edges, ext_vertices=np.arange(n, dtype=np.int64))
