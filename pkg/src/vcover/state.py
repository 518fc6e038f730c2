"""Candidate-solution state shared by the reductions, constructors and search.

A :class:`Kernel` tuple bundles the graph arrays, the partitions and the
bookkeeping the compiled routines need.  Adding or removing a vertex always
goes through :func:`add_vertex` / :func:`remove_vertex`, which keep every
neighbour's score, the uncovered-edge count and (when enabled) the indexed
set of uncovered edges in step.
"""

from __future__ import annotations

from typing import NamedTuple

import numba as nb
import numpy as np

from . import partitions as pt
from .graph import Csr, Graph
from .oracle import recompute_scores

# meta slots
UE = 0  # number of uncovered edges
STEP = 1
MAX_GAIN_USED = 2
TRACK_EDGES = 3  # maintain ue_list / ue_pos
COLLECT = 4  # push vertices reaching gain 1 / 2 onto the rule worklists
CSIZE = 5  # |C|
QUEUE_TAIL = 6  # 6..9 and 10..13: tail / head of the four FIFO worklists
QUEUE_HEAD = 10
META_SIZE = 14

# worklists
DEG1 = 0  # reached gain 1
GAIN2 = 1  # reached gain 2, not yet classified
TRI = 2  # gain 2 with adjacent outside neighbours
QUAD = 3  # gain 2 with non-adjacent outside neighbours


class Kernel(NamedTuple):
    g: Csr
    p: pt.Parts
    fixed: np.ndarray  # uint8
    meta: np.ndarray  # int64
    age: np.ndarray  # int64, step of last membership change
    ue_list: np.ndarray  # int32
    ue_pos: np.ndarray  # int32, -1 when covered
    queues: np.ndarray  # int32 (4, n); each vertex enters a queue at most once per pass


@nb.njit(inline="always")
def push(k, which, v):
    tail = k.meta[QUEUE_TAIL + which]
    k.queues[which, tail] = v
    k.meta[QUEUE_TAIL + which] = tail + 1


@nb.njit(inline="always")
def pop(k, which):
    head = k.meta[QUEUE_HEAD + which]
    k.meta[QUEUE_HEAD + which] = head + 1
    return k.queues[which, head]


@nb.njit(inline="always")
def queue_size(k, which):
    return k.meta[QUEUE_TAIL + which] - k.meta[QUEUE_HEAD + which]


@nb.njit(inline="always")
def clear_queues(k):
    for w in range(4):
        k.meta[QUEUE_TAIL + w] = 0
        k.meta[QUEUE_HEAD + w] = 0


@nb.njit(inline="always")
def _ue_add(k, e):
    i = k.meta[UE]
    k.ue_list[i] = e
    k.ue_pos[e] = i


@nb.njit(inline="always")
def _ue_drop(k, e):
    i = k.ue_pos[e]
    last = k.ue_list[k.meta[UE] - 1]
    k.ue_list[i] = last
    k.ue_pos[last] = i
    k.ue_pos[e] = -1


@nb.njit(cache=True)
def add_vertex(k, v):
    p = k.p
    g = k.g
    track = k.meta[TRACK_EDGES]
    collect = k.meta[COLLECT]
    pt.place_into(p, v)
    k.meta[CSIZE] += 1
    for j in range(g.offsets[v], g.offsets[v + 1]):
        u = g.nbrs[j]
        p.ops[pt.NEIGHBOR_VISITS] += 1
        if p.in_c[u]:
            pt.loss_dec(p, u)
        else:
            pt.gain_dec(p, u)
            if track:
                _ue_drop(k, g.inc[j])
            k.meta[UE] -= 1
            if collect:
                s = p.score[u]
                if s == 2:
                    push(k, GAIN2, u)
                elif s == 1:
                    push(k, DEG1, u)
    k.age[v] = k.meta[STEP]


@nb.njit(cache=True)
def remove_vertex(k, v):
    p = k.p
    g = k.g
    track = k.meta[TRACK_EDGES]
    pt.place_out(p, v)
    k.meta[CSIZE] -= 1
    for j in range(g.offsets[v], g.offsets[v + 1]):
        u = g.nbrs[j]
        p.ops[pt.NEIGHBOR_VISITS] += 1
        if p.in_c[u]:
            pt.loss_inc(p, u)
        else:
            pt.gain_inc(p, u)
            if track:
                _ue_add(k, g.inc[j])
            k.meta[UE] += 1
    k.age[v] = k.meta[STEP]


@nb.njit(cache=True)
def random_flips(k, rng, count):
    """Flip ``count`` uniformly chosen non-fixed vertices in or out of C."""
    n = k.p.slot.size
    if n == 0 or k.fixed.sum() == n:
        return
    done = 0
    while done < count:
        v = rng.integers(0, n)
        if k.fixed[v]:
            continue
        if k.p.in_c[v]:
            remove_vertex(k, v)
        else:
            add_vertex(k, v)
        done += 1


@nb.njit(cache=True)
def _rebuild_uncovered(k):
    g = k.g
    in_c = k.p.in_c
    k.meta[UE] = 0
    k.ue_pos[:] = -1
    for e in range(g.eu.size):
        if not in_c[g.eu[e]] and not in_c[g.ev[e]]:
            _ue_add(k, e)
            k.meta[UE] += 1


class SolverState:
    """Mutable candidate solution C over an immutable graph."""

    def __init__(self, graph: Graph):
        self.graph = graph
        n, m = graph.vertex_count, graph.edge_count
        meta = np.zeros(META_SIZE, np.int64)
        meta[UE] = m
        self.kernel = Kernel(
            g=graph.csr,
            p=pt.new_parts(graph.degrees),
            fixed=np.zeros(n, np.uint8),
            meta=meta,
            age=np.zeros(n, np.int64),
            ue_list=np.zeros(m, np.int32),
            ue_pos=np.full(m, -1, np.int32),
            queues=np.zeros((4, max(n, 1)), np.int32),
        )

    @property
    def partitions(self) -> pt.AltPartitions:
        return pt.AltPartitions(self.kernel.p)

    @property
    def in_cover(self) -> np.ndarray:
        return self.kernel.p.in_c.astype(bool)

    @property
    def fixed(self) -> np.ndarray:
        return self.kernel.fixed.astype(bool)

    @property
    def max_gain_used(self) -> bool:
        return bool(self.kernel.meta[MAX_GAIN_USED])

    @property
    def uncovered_count(self) -> int:
        return int(self.kernel.meta[UE])

    @property
    def step(self) -> int:
        return int(self.kernel.meta[STEP])

    @property
    def counters(self) -> dict[str, int]:
        return dict(zip(pt.COUNTER_NAMES, (int(x) for x in self.kernel.p.ops)))

    def cover(self) -> np.ndarray:
        return np.flatnonzero(self.kernel.p.in_c)

    def uncovered_edges(self) -> np.ndarray:
        if not self.kernel.meta[TRACK_EDGES]:
            raise RuntimeError("uncovered-edge tracking is off")
        return np.sort(self.kernel.ue_list[: self.kernel.meta[UE]])

    def add(self, v: int) -> None:
        add_vertex(self.kernel, v)

    def remove(self, v: int) -> None:
        if self.kernel.fixed[v]:
            raise ValueError(f"vertex {v} is fixed")
        remove_vertex(self.kernel, v)

    def track_uncovered(self) -> None:
        """Start maintaining the indexed set of uncovered edges."""
        _rebuild_uncovered(self.kernel)
        self.kernel.meta[TRACK_EDGES] = 1

    def park_fixed(self) -> None:
        """Move fixed vertices out of the loss regions into the parked prefix."""
        p = self.kernel.p
        if not np.array_equal(p.parked, self.kernel.fixed):
            p.parked[:] = self.kernel.fixed
            pt.layout(p)

    def check(self) -> None:
        """Full from-scratch consistency check; raises AssertionError on drift."""
        check_consistency(self)


def check_consistency(state: SolverState) -> None:
    k = state.kernel
    p = k.p
    graph = state.graph
    n = graph.vertex_count
    in_c = p.in_c.astype(bool)

    assert np.array_equal(p.slot[p.pos], np.arange(n)), "slot/position not inverse"
    assert np.array_equal(np.sort(p.slot), np.arange(n)), "slot is not a permutation"
    assert np.all(np.diff(p.start) >= 0) and p.start[0] == 0 and p.start[-1] == n, "bad region bounds"

    expected = recompute_scores(graph, in_c)
    bad = np.flatnonzero(expected != p.score)
    assert bad.size == 0, f"score drift at vertex {bad[0]}: stored {p.score[bad[0]]}, true {expected[bad[0]]}"
    assert np.all(p.score >= 0) and np.all(p.score <= graph.degrees), "score outside [0, d(v)]"

    parked = p.parked.astype(bool)
    region = np.where(parked, 0, 1 + 2 * p.score + (~in_c))
    lo = p.start[region]
    hi = p.start[region + 1]
    assert np.all((lo <= p.pos) & (p.pos < hi)), "vertex outside its region"
    assert np.all(in_c[parked]), "parked vertex outside C"
    assert np.all(in_c[k.fixed.astype(bool)]), "fixed vertex outside C"

    true_ue = int(np.count_nonzero(~in_c[graph.csr.eu] & ~in_c[graph.csr.ev]))
    assert k.meta[CSIZE] == np.count_nonzero(in_c), "cover size drift"
    assert k.meta[UE] == true_ue, f"uncovered count {k.meta[UE]} != {true_ue}"
    if k.meta[TRACK_EDGES]:
        tracked = np.sort(k.ue_list[: k.meta[UE]])
        truth = np.flatnonzero(~in_c[graph.csr.eu] & ~in_c[graph.csr.ev])
        assert np.array_equal(tracked, truth), "uncovered-edge set drift"
        assert np.all(k.ue_pos[tracked] >= 0)
        assert np.count_nonzero(k.ue_pos >= 0) == tracked.size
