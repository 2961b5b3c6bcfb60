"""Weighted undirected graphs in compressed adjacency form, plus G-set I/O.

G-set text is whitespace-delimited ASCII: a header ``N M`` followed by ``M``
lines ``u v w`` with 1-indexed endpoints and an integer weight. Lines that
start with ``%`` or ``#`` are treated as comments.
"""

from __future__ import annotations

import io
import os
from typing import Iterable

import numpy as np

from .errors import (
    DomainError,
    GraphConsistencyError,
    GraphParseError,
    GraphRangeError,
    GraphValidationError,
)

__all__ = ["Graph", "parse_gset", "read_gset", "density"]


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a)
    a.setflags(write=False)
    return a


class Graph:
    """Immutable weighted undirected graph.

    Neighbors of node ``i`` are ``indices[indptr[i]:indptr[i+1]]`` with the
    matching entries of ``weights``. Each undirected edge also appears once
    in the canonical edge arrays ``edge_u < edge_v``, ordered ascending by
    ``(edge_u, edge_v)``.
    """

    __slots__ = ("num_nodes", "indptr", "indices", "weights", "edge_u", "edge_v", "edge_w", "name")

    def __init__(self, num_nodes: int, edge_u, edge_v, edge_w, name: str | None = None):
        if num_nodes < 1:
            raise GraphValidationError(f"graph needs at least one node, got {num_nodes}")
        eu = np.asarray(edge_u, dtype=np.int64)
        ev = np.asarray(edge_v, dtype=np.int64)
        ew = np.asarray(edge_w, dtype=np.int64)
        if not (eu.shape == ev.shape == ew.shape) or eu.ndim != 1:
            raise GraphValidationError("edge arrays must be 1-d and equally long")
        if eu.size:
            if min(eu.min(), ev.min()) < 0 or max(eu.max(), ev.max()) >= num_nodes:
                raise GraphRangeError(f"edge endpoint outside [0, {num_nodes})")
            if np.any(eu == ev):
                raise GraphValidationError("self-loops are not allowed")
        lo = np.minimum(eu, ev)
        hi = np.maximum(eu, ev)
        order = np.lexsort((hi, lo))
        lo, hi, ew = lo[order], hi[order], ew[order]
        if lo.size > 1:
            dup = (lo[1:] == lo[:-1]) & (hi[1:] == hi[:-1])
            if dup.any():
                k = int(np.flatnonzero(dup)[0]) + 1
                raise GraphValidationError(f"duplicate edge ({lo[k] + 1}, {hi[k] + 1})")

        src = np.concatenate([lo, hi])
        dst = np.concatenate([hi, lo])
        wts = np.concatenate([ew, ew])
        order = np.lexsort((dst, src))
        src, dst, wts = src[order], dst[order], wts[order]
        indptr = np.zeros(num_nodes + 1, dtype=np.int64)
        np.cumsum(np.bincount(src, minlength=num_nodes), out=indptr[1:])

        self.num_nodes = int(num_nodes)
        self.indptr = _frozen(indptr)
        self.indices = _frozen(dst)
        self.weights = _frozen(wts)
        self.edge_u = _frozen(lo)
        self.edge_v = _frozen(hi)
        self.edge_w = _frozen(ew)
        self.name = name

    @classmethod
    def from_edges(cls, num_nodes: int, edges: Iterable[tuple], name: str | None = None) -> "Graph":
        """Build from ``(u, v)`` or ``(u, v, w)`` tuples with 0-indexed endpoints."""
        us, vs, ws = [], [], []
        for e in edges:
            us.append(e[0])
            vs.append(e[1])
            ws.append(e[2] if len(e) > 2 else 1)
        return cls(num_nodes, us, vs, ws, name=name)

    @property
    def num_edges(self) -> int:
        return int(self.edge_u.size)

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def max_degree(self) -> int:
        return int(self.degrees.max()) if self.num_nodes else 0

    @property
    def unit_weighted(self) -> bool:
        return bool(np.all(self.edge_w == 1))

    def neighbors(self, i: int) -> tuple[np.ndarray, np.ndarray]:
        a, b = self.indptr[i], self.indptr[i + 1]
        return self.indices[a:b], self.weights[a:b]

    def with_unit_weights(self) -> "Graph":
        return Graph(self.num_nodes, self.edge_u, self.edge_v, np.ones_like(self.edge_w), name=self.name)

    def to_gset(self) -> str:
        """Serialize in canonical edge order."""
        buf = io.StringIO()
        buf.write(f"{self.num_nodes} {self.num_edges}\n")
        for u, v, w in zip(self.edge_u.tolist(), self.edge_v.tolist(), self.edge_w.tolist()):
            buf.write(f"{u + 1} {v + 1} {w}\n")
        return buf.getvalue()

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.num_nodes == other.num_nodes
            and np.array_equal(self.edge_u, other.edge_u)
            and np.array_equal(self.edge_v, other.edge_v)
            and np.array_equal(self.edge_w, other.edge_w)
        )

    __hash__ = None

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Graph({label}N={self.num_nodes}, M={self.num_edges}, max_degree={self.max_degree})"


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphParseError(f"expected an integer, got {tok!r}", lineno) from None


def parse_gset(text: str | bytes, name: str | None = None) -> Graph:
    """Parse G-set text into a :class:`Graph` with 0-indexed nodes.

    Raises ``GraphParseError`` for malformed lines, ``GraphRangeError`` for
    endpoints outside ``1..N``, ``GraphValidationError`` for self-loops and
    duplicate edges, and ``GraphConsistencyError`` when the header edge count
    disagrees with the number of edge lines.
    """
    if isinstance(text, (bytes, bytearray)):
        try:
            text = text.decode("ascii")
        except UnicodeDecodeError as exc:
            raise GraphParseError(f"non-ASCII input: {exc}") from None

    header = None
    us, vs, ws = [], [], []
    seen = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s or s[0] in "%#":
            continue
        toks = s.split()
        if header is None:
            if len(toks) != 2:
                raise GraphParseError("header must be 'N M'", lineno)
            n, m = _int(toks[0], lineno), _int(toks[1], lineno)
            if n < 1 or m < 0:
                raise GraphParseError(f"invalid header N={n} M={m}", lineno)
            header = (n, m)
            continue
        if len(toks) != 3:
            raise GraphParseError(f"edge line must be 'u v w', got {len(toks)} fields", lineno)
        u, v, w = (_int(t, lineno) for t in toks)
        n = header[0]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphRangeError(f"endpoint out of range 1..{n}: {u} {v}", lineno)
        if u == v:
            raise GraphValidationError(f"self-loop on node {u}", lineno)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphValidationError(f"duplicate edge {key[0]} {key[1]}", lineno)
        seen.add(key)
        us.append(u - 1)
        vs.append(v - 1)
        ws.append(w)

    if header is None:
        raise GraphParseError("empty input, missing 'N M' header")
    n, m = header
    if len(us) != m:
        raise GraphConsistencyError(f"header declares {m} edges but {len(us)} edge lines follow")
    return Graph(n, us, vs, ws, name=name)


def read_gset(path: str | os.PathLike, unit_weights: bool = False) -> Graph:
    with open(path, "rb") as fh:
        g = parse_gset(fh.read(), name=os.path.basename(os.fspath(path)))
    return g.with_unit_weights() if unit_weights else g


def density(g: Graph) -> float:
    """``2 M / (N (N - 1))``."""
    n = g.num_nodes
    if n < 2:
        raise DomainError(f"density needs at least 2 nodes, got {n}")
    return 2.0 * g.num_edges / (n * (n - 1))
