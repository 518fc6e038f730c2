"""Building a starting vertex cover.

``init_vc`` grows C with the reduction rules and falls back to a single
max-gain pick only when no rule applies; if no fallback was ever needed the
cover is optimal.  ``min_gain_construct_vc`` and ``max_gain_construct_vc`` are
the classic greedy heuristics, linear here because the extreme-gain region is
found by walking the partition boundaries instead of rescanning vertices.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

import numba as nb
import numpy as np

from . import partitions as pt
from .graph import Graph
from .oracle import is_vertex_cover
from .reductions import FixedSet, rules_to_fixpoint, seed_worklists
from .state import COLLECT, MAX_GAIN_USED, UE, SolverState, add_vertex, remove_vertex


class OptInfo(str, enum.Enum):
    OPTIMAL = "optimal-guaranteed"
    NOT_GUARANTEED = "optimal-not-guaranteed"


@dataclass
class CoverResult:
    cover: np.ndarray
    opt_info: OptInfo
    fixed_set: FixedSet
    op_counters: dict[str, int]
    k_final: Optional[int] = None  # last max-gain cursor value
    state: Optional[SolverState] = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return int(self.cover.size)

    @property
    def optimal(self) -> bool:
        return self.opt_info is OptInfo.OPTIMAL


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


@nb.njit(cache=True)
def _extend(k, rng, det):
    p = k.p
    seed_worklists(k)
    k.meta[COLLECT] = 1
    cursor = (p.start.size - 2) // 2 - 1
    while True:
        rules_to_fixpoint(k)
        if k.meta[UE] == 0:
            break
        k.meta[MAX_GAIN_USED] = 1
        # gains never rise while C only grows, so the cursor only descends
        cursor = pt.max_gain_region(p, cursor)
        v = pt.pick_in_region(p, pt.gain_region(cursor), rng, det)
        add_vertex(k, v)
        p.ops[pt.MAX_GAIN_PICKS] += 1
    k.meta[COLLECT] = 0


@nb.njit(cache=True)
def _eliminate(k):
    p = k.p
    r = pt.loss_region(0)
    removed = 0
    while p.start[r + 1] > p.start[r]:
        p.ops[pt.BOUNDARY_TESTS] += 1
        remove_vertex(k, p.slot[p.start[r]])
        removed += 1
    p.ops[pt.BOUNDARY_TESTS] += 1
    p.ops[pt.REDUNDANT_REMOVED] += removed
    return removed


@nb.njit(cache=True)
def _min_gain(k, rng, det):
    p = k.p
    g = k.g
    while k.meta[UE] > 0:
        kk = pt.min_gain_region(p, 1)
        v = pt.pick_in_region(p, pt.gain_region(kk), rng, det)
        for j in range(g.offsets[v], g.offsets[v + 1]):
            u = g.nbrs[j]
            p.ops[pt.NEIGHBOR_VISITS] += 1
            if p.in_c[u]:
                continue
            add_vertex(k, u)


@nb.njit(cache=True)
def _max_gain(k, rng, det):
    p = k.p
    kk = (p.start.size - 2) // 2 - 1
    while k.meta[UE] > 0:
        kk = pt.max_gain_region(p, kk)
        v = pt.pick_in_region(p, pt.gain_region(kk), rng, det)
        add_vertex(k, v)
    return kk


def eliminate_redundant(state: SolverState) -> int:
    """Drop loss-0 non-fixed vertices, lowest slot first, until none is left."""
    state.park_fixed()
    return int(_eliminate(state.kernel))


def _finish(graph: Graph, state: SolverState, opt_info: OptInfo, k_final=None) -> CoverResult:
    cover = state.cover()
    # cheap O(|E|) guard on the incremental bookkeeping
    if state.uncovered_count != 0 or not is_vertex_cover(graph, cover):
        raise AssertionError("constructor returned a set that is not a vertex cover")
    fixed = FixedSet(state.fixed, state.max_gain_used)
    return CoverResult(cover, opt_info, fixed, state.counters, k_final, state)


def init_vc(graph: Graph, rng=None, deterministic: bool = False) -> CoverResult:
    """Reduction-driven construction with a max-gain fallback.

    Returns an optimality certificate when every vertex came from a rule.
    """
    state = SolverState(graph)
    _extend(state.kernel, _rng(rng), deterministic)
    eliminate_redundant(state)
    info = OptInfo.NOT_GUARANTEED if state.max_gain_used else OptInfo.OPTIMAL
    return _finish(graph, state, info)


def min_gain_construct_vc(graph: Graph, rng=None, deterministic: bool = False) -> CoverResult:
    """Repeatedly take a minimum positive gain vertex and add all its neighbours."""
    state = SolverState(graph)
    _min_gain(state.kernel, _rng(rng), deterministic)
    return _finish(graph, state, OptInfo.NOT_GUARANTEED)


def max_gain_construct_vc(graph: Graph, rng=None, deterministic: bool = False) -> CoverResult:
    """Repeatedly add a maximum gain vertex, with a descending cursor over gains."""
    state = SolverState(graph)
    k_final = _max_gain(state.kernel, _rng(rng), deterministic)
    return _finish(graph, state, OptInfo.NOT_GUARANTEED, int(k_final))
