"""Command-line front door: decompose graphs, compute scores, run top-r
searches, build and query indexes, and benchmark the four algorithms."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .diversity import compute_score, upper_bound_score
from .errors import GraphLoadError, IndexFormatError, MemoryCapExceeded
from .gct import build_gct, gct_topr, load_gct, save_gct
from .graph import Graph, load_edge_list, stats
from .oracle import oracle_score, oracle_topr, oracle_truss
from .search import TopRResult, bounded_search, online_search
from .truss import truss_decompose
from .tsd import build_tsd, load_tsd, save_tsd, tsd_topr

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_RESOURCE = 4


def _emit_report(args, command: str, report: dict) -> None:
    report = {"command": command, **report}
    text = json.dumps(report)
    if getattr(args, "report", None):
        Path(args.report).write_text(text)
    else:
        print(text, file=sys.stderr)


def _graph_block(g: Graph, st=None) -> dict:
    block = {"n": g.n, "m": g.m}
    if st is not None:
        block["d_max"] = st.d_max
        block["triangles"] = st.triangle_count
        if st.max_edge_trussness is not None:
            block["max_edge_trussness"] = st.max_edge_trussness
    return block


def _result_rows(records, with_contexts: bool) -> list[dict]:
    rows = []
    for rec in records:
        row = {"vertex": rec.vertex, "score": rec.score}
        if rec.padded:
            row["padded"] = True
        if with_contexts and rec.contexts is not None:
            row["contexts"] = rec.contexts.contexts
        rows.append(row)
    return rows


def _print_result(args, res: TopRResult, k: int, r: int) -> None:
    rows = _result_rows(res.records, args.contexts)
    pad = _result_rows(res.padding, args.contexts)
    if args.tsv:
        for row in rows:
            print(f"{row['vertex']}\t{row['score']}")
        for row in pad:
            print(f"{row['vertex']}\t{row['score']}\tpadded")
    else:
        payload = {"k": k, "r": r, "algo": res.algo, "results": rows}
        if pad:
            payload["padding"] = pad
        print(json.dumps(payload))


def cmd_decompose(args) -> int:
    g = load_edge_list(args.graph)
    tm = truss_decompose(g)
    lines = [f"{u}\t{v}\t{t}" for u, v, t in zip(tm.edges_u, tm.edges_v, tm.tau)]
    text = "\n".join(lines) + ("\n" if lines else "")
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_score(args) -> int:
    g = load_edge_list(args.graph)
    rec = compute_score(g, args.vertex, args.k, with_contexts=True)
    payload = {"vertex": rec.vertex, "k": rec.k, "score": rec.score}
    if args.contexts:
        payload["contexts"] = rec.contexts.contexts
    print(json.dumps(payload))
    return EXIT_OK


def cmd_stats(args) -> int:
    g = load_edge_list(args.graph)
    st = stats(g, trussmap=truss_decompose(g))
    print(json.dumps({"n": st.n, "m": st.m, "d_max": st.d_max,
                      "triangles": st.triangle_count,
                      "max_edge_trussness": st.max_edge_trussness,
                      "dropped_self_loops": g.load_summary.self_loops,
                      "dropped_duplicates": g.load_summary.duplicate_edges}))
    return EXIT_OK


def _run_algo(g: Graph, algo: str, r: int, k: int, threads: int,
              with_contexts: bool) -> TopRResult:
    if algo == "online":
        return online_search(g, r, k, threads=threads, with_contexts=with_contexts)
    if algo == "bounded":
        return bounded_search(g, r, k, threads=threads, with_contexts=with_contexts)
    if algo == "tsd":
        idx = build_tsd(g, threads=threads)
        return tsd_topr(idx, r, k, with_contexts=with_contexts)
    idx = build_gct(g, threads=threads)
    return gct_topr(idx, r, k, with_contexts=with_contexts)


def cmd_search(args) -> int:
    t0 = time.perf_counter()
    g = load_edge_list(args.graph)
    t_load = time.perf_counter() - t0
    res = _run_algo(g, args.algo, args.r, args.k, args.threads, args.contexts)
    _print_result(args, res, args.k, args.r)
    _emit_report(args, "search", {
        "parameters": {"r": args.r, "k": args.k, "algo": args.algo,
                       "threads": args.threads},
        "graph": _graph_block(g),
        "search_space": res.search_space,
        "timings": {"load": round(t_load, 6), "search": round(res.elapsed, 6),
                    "total": round(time.perf_counter() - t0, 6)},
        "digest": res.digest(),
    })
    return EXIT_OK


def cmd_build_index(args) -> int:
    t0 = time.perf_counter()
    g = load_edge_list(args.graph)
    t_load = time.perf_counter() - t0
    t0 = time.perf_counter()
    if args.type == "tsd":
        idx = build_tsd(g, threads=args.threads)
        save_tsd(idx, args.out)
        size_units = idx.storage_units()
    else:
        idx = build_gct(g, threads=args.threads)
        save_gct(idx, args.out)
        size_units = idx.storage_units()
    t_build = time.perf_counter() - t0
    print(json.dumps({"type": args.type, "out": str(args.out),
                      "vertices": idx.n, "storage_units": size_units}))
    _emit_report(args, "build-index", {
        "parameters": {"type": args.type, "threads": args.threads},
        "graph": _graph_block(g),
        "timings": {"load": round(t_load, 6), "build": round(t_build, 6)},
    })
    return EXIT_OK


def _load_any_index(path: str):
    try:
        payload = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise IndexFormatError(f"cannot read index {path}: {exc}") from exc
    fmt = payload.get("format")
    if fmt == "tsd":
        return "tsd", load_tsd(path)
    if fmt == "gct":
        return "gct", load_gct(path)
    raise IndexFormatError(f"unknown index format {fmt!r} in {path}")


def cmd_query(args) -> int:
    t0 = time.perf_counter()
    kind, idx = _load_any_index(args.index)
    t_load = time.perf_counter() - t0
    if kind == "tsd":
        res = tsd_topr(idx, args.r, args.k, with_contexts=args.contexts)
    else:
        res = gct_topr(idx, args.r, args.k, with_contexts=args.contexts)
    _print_result(args, res, args.k, args.r)
    _emit_report(args, "query", {
        "parameters": {"r": args.r, "k": args.k, "type": kind},
        "search_space": res.search_space,
        "timings": {"load": round(t_load, 6), "query": round(res.elapsed, 6)},
        "digest": res.digest(),
    })
    return EXIT_OK


def cmd_bench(args) -> int:
    g = load_edge_list(args.graph)
    st = stats(g)
    runs = {}
    digests = set()
    for algo in ("online", "bounded", "tsd", "gct"):
        res = _run_algo(g, algo, args.r, args.k, args.threads, False)
        runs[algo] = {"time": round(res.elapsed, 6),
                      "search_space": res.search_space,
                      "digest": res.digest()}
        digests.add(res.digest())
    agree = len(digests) == 1
    print(json.dumps({"graph": _graph_block(g, st), "r": args.r, "k": args.k,
                      "digests_identical": agree, "runs": runs}))
    _emit_report(args, "bench", {
        "parameters": {"r": args.r, "k": args.k, "threads": args.threads},
        "graph": _graph_block(g, st),
        "digests_identical": agree,
        "runs": runs,
    })
    return EXIT_OK if agree else 1


def cmd_oracle(args) -> int:
    # test-support command for pinning golden values; not in the public help
    g = load_edge_list(args.graph)
    if args.mode == "truss":
        tau = oracle_truss(g, cap=args.cap)
        print(json.dumps([[u, v, t] for (u, v), t in sorted(tau.items())]))
    elif args.mode == "score":
        rec = oracle_score(g, args.vertex, args.k, cap=args.cap)
        print(json.dumps({"vertex": rec.vertex, "k": rec.k,
                          "score": rec.score, "contexts": rec.contexts}))
    else:
        rows = oracle_topr(g, args.r, args.k, cap=args.cap)
        print(json.dumps([{"vertex": s.vertex, "score": s.score} for s in rows]))
    return EXIT_OK


def _add_common(p, *, r_default=100, k_default=3) -> None:
    p.add_argument("--r", type=int, default=r_default,
                   help=f"result size (default {r_default})")
    p.add_argument("--k", type=int, default=k_default,
                   help=f"trussness threshold (default {k_default})")
    p.add_argument("--contexts", action="store_true",
                   help="include social context member lists")
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="tsv", action="store_false", default=False,
                     help="JSON output (default)")
    fmt.add_argument("--tsv", dest="tsv", action="store_true",
                     help="TSV output: vertex<TAB>score")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="trussdiv",
        description="Truss-based structural diversity search over undirected graphs.")
    ap.add_argument("--version", action="version", version=f"trussdiv {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="edge trussness as 'u v tau' lines")
    p.add_argument("graph")
    p.add_argument("--out", help="write TSV here instead of stdout")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("score", help="structural diversity of one vertex")
    p.add_argument("graph")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--contexts", action="store_true")
    p.set_defaults(fn=cmd_score)

    p = sub.add_parser("stats", help="graph statistics")
    p.add_argument("graph")
    p.set_defaults(fn=cmd_stats)

    p = sub.add_parser("search", help="top-r structural diversity search")
    p.add_argument("graph")
    _add_common(p)
    p.add_argument("--algo", choices=("online", "bounded", "tsd", "gct"),
                   default="bounded")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report", help="write the run report here instead of stderr")
    p.set_defaults(fn=cmd_search)

    p = sub.add_parser("build-index", help="build and save a TSD or GCT index")
    p.add_argument("graph")
    p.add_argument("--type", choices=("tsd", "gct"), required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_build_index)

    p = sub.add_parser("query", help="top-r query against a saved index")
    p.add_argument("index")
    _add_common(p)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_query)

    p = sub.add_parser("bench", help="run all four algorithms and compare")
    p.add_argument("graph")
    p.add_argument("--r", type=int, default=100)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--report")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("oracle")   # hidden test-support command
    p.add_argument("graph")
    p.add_argument("mode", choices=("truss", "score", "topr"))
    p.add_argument("--vertex", type=int, default=0)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--cap", type=int, default=200)
    p.set_defaults(fn=cmd_oracle)

    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except MemoryCapExceeded as exc:
        print(f"trussdiv: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (GraphLoadError, IndexFormatError) as exc:
        print(f"trussdiv: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"trussdiv: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
