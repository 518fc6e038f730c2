"""Local search over vertex covers, seeded by :func:`init_vc`.

Each step removes a minimum-loss non-fixed vertex from C and adds the
higher-gain endpoint of a random uncovered edge, preferring the endpoint
whose membership changed longer ago.  Whenever C covers every edge it is
recorded as the best cover and one extra vertex is dropped, so the search
keeps hunting for a cover one smaller.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

import numba as nb
import numpy as np

from . import partitions as pt
from .constructors import CoverResult, OptInfo, init_vc
from .graph import Graph
from .oracle import is_vertex_cover
from .state import CSIZE, STEP, UE, SolverState, add_vertex, remove_vertex

CHECK_EVERY = 1024  # steps between wall-clock checks

RUNNING, EXHAUSTED = 0, 1


@dataclass
class SearchConfig:
    seed: int = 1
    cutoff: Optional[float] = 1000.0
    max_steps: Optional[int] = None
    tie_break: str = "random"

    def __post_init__(self):
        if self.cutoff is None and self.max_steps is None:
            raise ValueError("need a cutoff or a step budget")
        if self.cutoff is not None and self.cutoff <= 0:
            raise ValueError("cutoff must be positive")
        if self.tie_break not in ("random", "deterministic"):
            raise ValueError(f"unknown tie-break mode {self.tie_break!r}")


@dataclass
class SolveOutcome:
    best_cover: np.ndarray
    opt_info: OptInfo
    steps: int
    elapsed: float
    init_size: int
    op_counters: dict[str, int] = field(default_factory=dict)
    search_ops: int = 0  # basic operations spent after construction

    @property
    def best_size(self) -> int:
        return int(self.best_cover.size)

    @property
    def steps_per_ms(self) -> float:
        return self.steps / (self.elapsed * 1000.0) if self.elapsed > 0 else 0.0


@nb.njit(cache=True)
def _run_steps(k, rng, det, nsteps, best, best_size, n_fixed):
    """Run up to ``nsteps`` steps; returns (steps done, best size, status)."""
    p = k.p
    g = k.g
    meta = k.meta
    for done in range(nsteps):
        if meta[UE] == 0:
            if meta[CSIZE] < best_size:
                best[:] = p.in_c
                best_size = meta[CSIZE]
            u = pt.random_min_loss_vertex(p, rng, det)
            if u < 0:
                # C is exactly the fixed set and covers G: nothing left to try
                return done, best_size, EXHAUSTED
            remove_vertex(k, u)
        u = pt.random_min_loss_vertex(p, rng, det)
        if u >= 0:
            remove_vertex(k, u)
        elif best_size <= n_fixed + 1:
            # the fixed set lies in some minimum cover and is not a cover
            # itself, so no cover beats |fixed| + 1
            return done, best_size, EXHAUSTED
        if meta[UE] > 0:
            if det:
                e = k.ue_list[0]
            else:
                e = k.ue_list[rng.integers(0, meta[UE])]
            a = g.eu[e]
            b = g.ev[e]
            ga = p.score[a]
            gb = p.score[b]
            if ga > gb or (ga == gb and k.age[a] <= k.age[b]):
                add_vertex(k, a)
            else:
                add_vertex(k, b)
        meta[STEP] += 1
    return nsteps, best_size, RUNNING


def _basic_ops(counters) -> int:
    return int(counters[pt.MOVES] + counters[pt.BOUNDARY_TESTS] + counters[pt.NEIGHBOR_VISITS])


class SearchState:
    """Local search in progress: the solver state plus the best cover so far."""

    def __init__(self, graph: Graph, start: CoverResult, rng: np.random.Generator, deterministic: bool = False):
        self.graph = graph
        self.state = start.state
        self.state.park_fixed()
        self.state.track_uncovered()
        self.rng = rng
        self.deterministic = deterministic
        self.best = self.state.kernel.p.in_c.copy()
        self.best_size = start.size
        self.n_fixed = int(self.state.kernel.fixed.sum())
        self.exhausted = False

    @property
    def step(self) -> int:
        return self.state.step

    def run(self, nsteps: int) -> int:
        if self.exhausted or nsteps <= 0:
            return 0
        done, self.best_size, status = _run_steps(
            self.state.kernel, self.rng, self.deterministic, nsteps, self.best, self.best_size, self.n_fixed
        )
        self.exhausted = status == EXHAUSTED
        return int(done)

    def best_cover(self) -> np.ndarray:
        return np.flatnonzero(self.best)


def exchange_step(search: SearchState) -> bool:
    """One step of the search; returns False once nothing more can be tried."""
    return search.run(1) == 1


def solve(graph: Graph, config: SearchConfig) -> SolveOutcome:
    """Construct with :func:`init_vc`, then search until the budget runs out."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(config.seed)
    det = config.tie_break == "deterministic"
    start = init_vc(graph, rng, deterministic=det)
    if start.optimal:
        return SolveOutcome(start.cover, start.opt_info, 0, time.perf_counter() - t0, start.size, start.op_counters)

    search = SearchState(graph, start, rng, det)
    ops_before = _basic_ops(search.state.kernel.p.ops)
    remaining = config.max_steps
    while not search.exhausted:
        if config.cutoff is not None and time.perf_counter() - t0 >= config.cutoff:
            break
        chunk = CHECK_EVERY if remaining is None else min(CHECK_EVERY, remaining)
        if chunk <= 0:
            break
        done = search.run(chunk)
        if remaining is not None:
            remaining -= done

    best = search.best_cover()
    if best.size != search.best_size or not is_vertex_cover(graph, best):
        raise AssertionError("recorded best cover is inconsistent")
    counters = search.state.counters
    return SolveOutcome(
        best_cover=best,
        opt_info=start.opt_info,
        steps=search.step,
        elapsed=time.perf_counter() - t0,
        init_size=start.size,
        op_counters=counters,
        search_ops=_basic_ops(search.state.kernel.p.ops) - ops_before,
    )
