"""G-set catalogue and generators for structurally matched stand-in graphs.

The G-set instances come from the ``rudy`` generator in three families:
uniform random graphs, 2-D toroidal grids (unit or random +-1 weights) and
unions of two near-planar graphs. When the original files are unavailable,
:func:`surrogate` builds a graph of the same family with identical node and
edge counts from a fixed seed, which is enough for quality and scaling
experiments but not for matching exact published cut values.
"""

from __future__ import annotations

import csv
import os
import zlib
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay

from .errors import DomainError
from .graph import Graph, read_gset

__all__ = [
    "GSetEntry",
    "CATALOGUE",
    "reference_results",
    "random_graph",
    "toroidal_grid",
    "planar_union",
    "surrogate",
    "load",
    "write_fixture_set",
]


@dataclass(frozen=True)
class GSetEntry:
    graph_id: str
    nodes: int
    edges: int
    family: str  # "random", "torus" or "planar"
    signed: bool = False
    shape: tuple[int, int] | None = None


def _e(gid, n, m, family, signed=False, shape=None):
    return GSetEntry(gid, n, m, family, signed, shape)


# Instances with at least 1000 nodes. Torus shapes follow rows x 100 columns.
CATALOGUE: dict[str, GSetEntry] = {e.graph_id: e for e in [
    _e("G22", 2000, 19990, "random"),
    _e("G23", 2000, 19990, "random"),
    _e("G24", 2000, 19990, "random"),
    _e("G28", 2000, 19990, "random", signed=True),
    _e("G30", 2000, 19990, "random", signed=True),
    _e("G31", 2000, 19990, "random", signed=True),
    _e("G32", 2000, 4000, "torus", signed=True, shape=(20, 100)),
    _e("G33", 2000, 4000, "torus", signed=True, shape=(20, 100)),
    _e("G34", 2000, 4000, "torus", signed=True, shape=(20, 100)),
    _e("G35", 2000, 11778, "planar"),
    _e("G36", 2000, 11766, "planar"),
    _e("G37", 2000, 11785, "planar"),
    _e("G38", 2000, 11779, "planar"),
    _e("G43", 1000, 9990, "random"),
    _e("G44", 1000, 9990, "random"),
    _e("G45", 1000, 9990, "random"),
    _e("G46", 1000, 9990, "random"),
    _e("G47", 1000, 9990, "random"),
    _e("G48", 3000, 6000, "torus", shape=(30, 100)),
    _e("G49", 3000, 6000, "torus", shape=(30, 100)),
    _e("G50", 3000, 6000, "torus", shape=(30, 100)),
    _e("G51", 1000, 5909, "planar"),
    _e("G52", 1000, 5916, "planar"),
    _e("G53", 1000, 5914, "planar"),
    _e("G54", 1000, 5916, "planar"),
    _e("G55", 5000, 12498, "random"),
    _e("G57", 5000, 10000, "torus", signed=True, shape=(50, 100)),
    _e("G58", 5000, 29570, "planar"),
    _e("G60", 7000, 17148, "random"),
    _e("G62", 7000, 14000, "torus", signed=True, shape=(70, 100)),
    _e("G64", 7000, 41459, "planar"),
    _e("G65", 8000, 16000, "torus", signed=True, shape=(80, 100)),
    _e("G66", 9000, 18000, "torus", signed=True, shape=(90, 100)),
    _e("G67", 10000, 20000, "torus", signed=True, shape=(100, 100)),
    _e("G70", 10000, 9999, "random"),
    _e("G72", 10000, 20000, "torus", signed=True, shape=(100, 100)),
    _e("G77", 14000, 28000, "torus", signed=True, shape=(140, 100)),
    _e("G81", 20000, 40000, "torus", signed=True, shape=(200, 100)),
]}


def reference_results() -> list[dict]:
    """Published per-instance results (nodes, edges, density, times, cuts, balances)."""
    text = resources.files("isingpart").joinpath("data/gset_reference.csv").read_text()
    rows = []
    for row in csv.DictReader(text.splitlines()):
        rows.append({k: (v if k == "graph_id" else float(v) if "." in v or "E" in v else int(v))
                     for k, v in row.items()})
    return rows


def _signs(rng, m, signed):
    if signed:
        return rng.choice(np.array([-1, 1], dtype=np.int64), size=m)
    return np.ones(m, dtype=np.int64)


def random_graph(n: int, m: int, seed=0, signed: bool = False, name=None) -> Graph:
    """Uniformly random simple graph with exactly ``m`` edges."""
    total = n * (n - 1) // 2
    if not 0 <= m <= total:
        raise DomainError(f"cannot place {m} edges on {n} nodes")
    rng = np.random.default_rng(seed)
    keys = np.empty(0, dtype=np.int64)
    while keys.size < m:
        u, v = rng.integers(0, n, size=(2, 2 * (m - keys.size) + 16))
        ok = u != v
        new = np.minimum(u, v)[ok] * n + np.maximum(u, v)[ok]
        merged = np.concatenate([keys, new])
        _, first = np.unique(merged, return_index=True)
        keys = merged[np.sort(first)]
    keys = keys[:m]
    u, v = keys // n, keys % n
    return Graph(n, u, v, _signs(rng, m, signed), name=name)


def toroidal_grid(rows: int, cols: int, seed=0, signed: bool = False, name=None) -> Graph:
    """``rows x cols`` 2-D torus; every node has degree 4 when both sides exceed 2."""
    idx = np.arange(rows * cols).reshape(rows, cols)
    u = np.concatenate([idx.ravel(), idx.ravel()])
    v = np.concatenate([np.roll(idx, -1, axis=1).ravel(), np.roll(idx, -1, axis=0).ravel()])
    lo, hi = np.minimum(u, v), np.maximum(u, v)
    pairs = np.unique(np.stack([lo, hi], axis=1), axis=0)
    rng = np.random.default_rng(seed)
    return Graph(rows * cols, pairs[:, 0], pairs[:, 1], _signs(rng, len(pairs), signed), name=name)


def _delaunay_edges(points):
    tri = Delaunay(points).simplices
    e = np.concatenate([tri[:, [0, 1]], tri[:, [1, 2]], tri[:, [0, 2]]])
    return np.sort(e, axis=1)


def planar_union(n: int, m: int, seed=0, signed: bool = False, name=None) -> Graph:
    """Union of two Delaunay triangulations over independent point sets, trimmed to ``m`` edges."""
    rng = np.random.default_rng(seed)
    edges = np.unique(np.concatenate([_delaunay_edges(rng.random((n, 2))),
                                      _delaunay_edges(rng.random((n, 2)))]), axis=0)
    if edges.shape[0] < m:
        raise DomainError(f"planar union of {n} nodes has only {edges.shape[0]} edges, need {m}")
    edges = edges[np.sort(rng.choice(edges.shape[0], size=m, replace=False))]
    return Graph(n, edges[:, 0], edges[:, 1], _signs(rng, m, signed), name=name)


def surrogate(graph_id: str, seed: int | None = None) -> Graph:
    """Stand-in for a catalogued G-set instance with the same N, M and family."""
    try:
        e = CATALOGUE[graph_id]
    except KeyError:
        raise DomainError(f"{graph_id!r} is not in the G-set catalogue") from None
    if seed is None:
        seed = zlib.crc32(graph_id.encode())
    if e.family == "random":
        g = random_graph(e.nodes, e.edges, seed, e.signed)
    elif e.family == "torus":
        g = toroidal_grid(*e.shape, seed=seed, signed=e.signed)
    else:
        g = planar_union(e.nodes, e.edges, seed, e.signed)
    assert g.num_nodes == e.nodes and g.num_edges == e.edges, graph_id
    g.name = graph_id
    return g


def load(graph_id: str, directory=None, unit_weights: bool = False) -> tuple[Graph, bool]:
    """Load ``graph_id`` from ``directory`` (or ``$GSET_DIR``) if present, else a surrogate.

    Returns ``(graph, is_original)``.
    """
    directory = directory or os.environ.get("GSET_DIR")
    if directory:
        for candidate in (graph_id, f"{graph_id}.txt", graph_id.lower(), f"{graph_id.lower()}.txt"):
            path = Path(directory) / candidate
            if path.is_file():
                g = read_gset(path, unit_weights=unit_weights)
                g.name = graph_id
                return g, True
    g = surrogate(graph_id)
    return (g.with_unit_weights() if unit_weights else g), False


def write_fixture_set(directory, graph_ids=None) -> list[Path]:
    """Write surrogate instances as G-set files named ``<id>.txt``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for gid in graph_ids or CATALOGUE:
        path = directory / f"{gid}.txt"
        path.write_text(surrogate(gid).to_gset())
        out.append(path)
    return out
