"""Immutable simple undirected graphs stored in compressed sparse row form."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numba as nb
import numpy as np


class GraphError(ValueError):
    """Raised when raw edge data cannot form a graph on the declared vertices."""


class Csr(NamedTuple):
    """Array view of a graph handed to the compiled kernels.

    ``nbrs[offsets[v]:offsets[v+1]]`` are the neighbours of ``v`` in ascending
    order and ``inc`` holds the id of the edge behind each adjacency entry.
    """

    offsets: np.ndarray
    nbrs: np.ndarray
    inc: np.ndarray
    eu: np.ndarray
    ev: np.ndarray


@dataclass(frozen=True, eq=False)
class Graph:
    vertex_count: int
    edge_count: int
    csr: Csr = field(repr=False)
    dropped: int = 0

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.csr.offsets)

    @property
    def d_max(self) -> int:
        return int(self.degrees.max()) if self.vertex_count else 0

    @property
    def d_avg(self) -> float:
        return 2.0 * self.edge_count / self.vertex_count if self.vertex_count else 0.0

    @property
    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges, lower endpoint first, sorted."""
        return np.column_stack((self.csr.eu, self.csr.ev))

    def neighbors(self, v: int) -> np.ndarray:
        o = self.csr.offsets
        return self.csr.nbrs[o[v]:o[v + 1]]

    def degree(self, v: int) -> int:
        o = self.csr.offsets
        return int(o[v + 1] - o[v])

    def has_edge(self, u: int, v: int) -> bool:
        nb_u = self.neighbors(u)
        i = np.searchsorted(nb_u, v)
        return bool(i < nb_u.size and nb_u[i] == v)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.edge_count == other.edge_count
            and all(np.array_equal(a, b) for a, b in zip(self.csr, other.csr))
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edge_count, self.csr.eu.tobytes(), self.csr.ev.tobytes()))


@nb.njit(cache=True)
def _fill_csr(n, eu, ev):
    m = eu.size
    offsets = np.zeros(n + 1, np.int64)
    for i in range(m):
        offsets[eu[i] + 1] += 1
        offsets[ev[i] + 1] += 1
    for v in range(n):
        offsets[v + 1] += offsets[v]
    nbrs = np.empty(2 * m, np.int32)
    inc = np.empty(2 * m, np.int32)
    fill = offsets[:-1].copy()
    # edges are sorted by (u, v): the reversed pass first yields the lower
    # neighbours of each vertex in order, the forward pass the higher ones
    for i in range(m):
        v = ev[i]
        nbrs[fill[v]] = eu[i]
        inc[fill[v]] = i
        fill[v] += 1
    for i in range(m):
        u = eu[i]
        nbrs[fill[u]] = ev[i]
        inc[fill[u]] = i
        fill[u] += 1
    return offsets, nbrs, inc


def _freeze(*arrays: np.ndarray) -> None:
    for a in arrays:
        a.setflags(write=False)


def build_graph(raw_edges: Iterable[tuple[int, int]] | np.ndarray, vertex_count: int) -> Graph:
    """Build a simple graph from raw 0-based pairs.

    Self-loops and repeated edges are dropped and counted in ``Graph.dropped``.
    """
    n = int(vertex_count)
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    pairs = np.asarray(raw_edges if isinstance(raw_edges, np.ndarray) else list(raw_edges), dtype=np.int64)
    if pairs.size == 0:
        pairs = pairs.reshape(0, 2)
    if pairs.ndim != 2 or pairs.shape[1] != 2:
        raise GraphError("edges must be a sequence of pairs")
    bad = np.flatnonzero((pairs < 0).any(axis=1) | (pairs >= n).any(axis=1))
    if bad.size:
        u, v = pairs[bad[0]]
        raise GraphError(f"edge #{bad[0]} ({u}, {v}) has an endpoint outside [0, {n})")

    lo = np.minimum(pairs[:, 0], pairs[:, 1])
    hi = np.maximum(pairs[:, 0], pairs[:, 1])
    keep = lo != hi
    keys = np.unique(lo[keep] * n + hi[keep])
    dropped = int(pairs.shape[0] - keys.size)
    eu = (keys // max(n, 1)).astype(np.int32)
    ev = (keys % max(n, 1)).astype(np.int32)
    offsets, nbrs, inc = _fill_csr(n, eu, ev)
    _freeze(offsets, nbrs, inc, eu, ev)
    return Graph(n, int(keys.size), Csr(offsets, nbrs, inc, eu, ev), dropped)


def random_graph(n: int, edge_prob: float, seed: int) -> Graph:
    """Sample an Erdos-Renyi G(n, p) graph deterministically from ``seed``.

    The edge count is drawn from Binomial(n(n-1)/2, p) and the edge set is a
    uniform subset of that size, so large sparse graphs never touch all pairs.
    """
    if n < 1:
        raise GraphError("n must be positive")
    if not 0.0 <= edge_prob <= 1.0:
        raise GraphError(f"edge probability {edge_prob} outside [0, 1]")
    rng = np.random.default_rng(seed)
    total = n * (n - 1) // 2
    if total <= 4_000_000:
        iu, ju = np.triu_indices(n, k=1)
        mask = rng.random(total) < edge_prob
        return build_graph(np.column_stack((iu[mask], ju[mask])), n)

    target = int(rng.binomial(total, edge_prob))
    keys = np.empty(0, np.int64)
    while keys.size < target:
        need = target - keys.size
        batch = rng.integers(0, n, size=(need + need // 8 + 16, 2), dtype=np.int64)
        lo = batch.min(axis=1)
        hi = batch.max(axis=1)
        fresh = lo[lo != hi] * n + hi[lo != hi]
        # keep first occurrences in draw order so the result is a uniform subset
        merged = np.concatenate((keys, fresh))
        _, first = np.unique(merged, return_index=True)
        keys = merged[np.sort(first)][:target]
    return build_graph(np.column_stack((keys // n, keys % n)), n)


def complete_graph(n: int) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    return build_graph(np.column_stack((iu, ju)), n)


def star_graph(leaves: int) -> Graph:
    """Centre 0 joined to leaves ``1..leaves``."""
    return build_graph([(0, i) for i in range(1, leaves + 1)], leaves + 1)


def path_graph(n: int) -> Graph:
    return build_graph([(i, i + 1) for i in range(n - 1)], n)


def cycle_graph(n: int) -> Graph:
    return build_graph([(i, (i + 1) % n) for i in range(n)], n)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(outer + spokes + inner, 10)
