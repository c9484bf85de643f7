"""Truss-based structural diversity search for undirected graphs."""

from importlib import resources
from pathlib import Path

from .errors import GraphLoadError, IndexFormatError, MemoryCapExceeded, TrussdivError
from .graph import Graph, GraphStats, LoadSummary, common_neighbors, load_edge_list, stats

__version__ = "0.1.0"


def fixture_path(name: str) -> Path:
    """Path of a bundled example graph (fig1_ego.txt, fig1_full.txt)."""
    return Path(str(resources.files("trussdiv") / "data" / name))

__all__ = [
    "Graph",
    "GraphStats",
    "LoadSummary",
    "common_neighbors",
    "load_edge_list",
    "stats",
    "TrussdivError",
    "GraphLoadError",
    "MemoryCapExceeded",
    "IndexFormatError",
    "fixture_path",
    "__version__",
]
