"""Slow, obviously-correct reference implementations, used only by tests.

Everything here works by direct definition on Python sets: trussness by
iterated deletion with full support recounts, scores by induced-subgraph
construction and flood fill. Nothing below shares code with the optimized
paths beyond Graph loading, so equivalence tests are meaningful.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph

DEFAULT_CAP = 200


class OracleCapExceeded(RuntimeError):
    pass


def _check_cap(n: int, cap: int) -> None:
    if n > cap:
        raise OracleCapExceeded(f"oracle cap exceeded: n={n} > {cap}")


def _adj_sets(edges: set[tuple[int, int]]) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return adj


def _truss_by_definition(edges: set[tuple[int, int]]) -> dict[tuple[int, int], int]:
    """tau(e) = last k at which e survives the k-truss deletion fixpoint."""
    tau = {e: 2 for e in edges}
    alive = set(edges)
    k = 3
    while alive:
        # k-truss fixpoint: repeatedly delete edges with support < k-2,
        # recomputing supports from scratch each round.
        while True:
            adj = _adj_sets(alive)
            doomed = [(u, v) for (u, v) in alive if len(adj[u] & adj[v]) < k - 2]
            if not doomed:
                break
            alive.difference_update(doomed)
        for e in alive:
            tau[e] = k
        k += 1
    return tau


def _graph_edges(g: Graph) -> set[tuple[int, int]]:
    pairs = g.edge_list_external()
    return {(int(u), int(v)) for u, v in pairs}


def oracle_truss(g: Graph, cap: int = DEFAULT_CAP) -> dict[tuple[int, int], int]:
    """Edge trussness by definition; keys are external (u,v) with u < v."""
    _check_cap(g.n, cap)
    return _truss_by_definition(_graph_edges(g))


def _ego_edges(g: Graph, v_ext: int,
               eset: set[tuple[int, int]] | None = None
               ) -> tuple[list[int], set[tuple[int, int]]]:
    """Induced subgraph by definition: test every member pair against E."""
    if eset is None:
        eset = _graph_edges(g)
    vi = g.to_internal(v_ext)
    members = sorted(int(x) for x in g.to_external(g.neighbors(vi)))
    edges = set()
    for i, u in enumerate(members):
        for w in members[i + 1:]:
            if (u, w) in eset:
                edges.add((u, w))
    return members, edges


def _components(edges: set[tuple[int, int]]) -> list[list[int]]:
    adj = _adj_sets(edges)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for start in adj:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


@dataclass
class OracleScore:
    vertex: int
    k: int
    score: int
    contexts: list[list[int]] = field(default_factory=list)


def oracle_score(g: Graph, v: int, k: int, cap: int = DEFAULT_CAP,
                 _eset: set[tuple[int, int]] | None = None) -> OracleScore:
    """Defs 2-3 by direct construction on the induced neighborhood."""
    _check_cap(g.n, cap)
    if k < 2:
        raise ValueError("k must be >= 2")
    _, edges = _ego_edges(g, v, _eset)
    tau = _truss_by_definition(edges)
    kept = {e for e in edges if tau[e] >= k}
    comps = _components(kept)
    return OracleScore(v, k, len(comps), comps)


def oracle_topr(g: Graph, r: int, k: int, cap: int = DEFAULT_CAP) -> list[OracleScore]:
    """Exhaustive ranking with the (score desc, external id asc) tie order.

    Only vertices with positive score are returned, at most r of them.
    """
    _check_cap(g.n, cap)
    eset = _graph_edges(g)
    scored = [oracle_score(g, int(v), k, cap, _eset=eset) for v in g.ext_ids]
    scored = [s for s in scored if s.score > 0]
    scored.sort(key=lambda s: (-s.score, s.vertex))
    return scored[:r]
