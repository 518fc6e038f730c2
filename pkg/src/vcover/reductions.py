"""Degree-1, degree-2 triangle and degree-2 quadrilateral rules on a partial cover.

Each rule is read on the residual graph left by the current C: a vertex
``v`` outside C with gain 1 or 2 has exactly that many neighbours outside C.

* degree-1: ``v`` has gain 1 -> add its single outside neighbour.
* triangle: ``v`` has gain 2 and its outside neighbours ``n1, n2`` are
  adjacent -> add both.
* quadrilateral: ``u != v`` both have gain 2 with the same non-adjacent
  outside neighbours ``n1, n2`` -> add both.

Candidates come from worklists filled as vertices drop to gain 1 or 2.  Gains
only fall while rules add vertices, so each vertex reaches a given gain at
most once and a failed degree-2 check stays failed until its gain changes;
that keeps a fixpoint pass linear in the work done.  Vertices added while no
max-gain pick has happened yet are marked fixed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numba as nb
import numpy as np

from . import partitions as pt
from .state import (
    DEG1,
    GAIN2,
    MAX_GAIN_USED,
    QUAD,
    TRI,
    COLLECT,
    SolverState,
    add_vertex,
    clear_queues,
    pop,
    push,
    queue_size,
)


@dataclass(frozen=True)
class FixedSet:
    fixed: np.ndarray
    max_gain_used: bool

    @property
    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.fixed)


@nb.njit(cache=True)
def _outside_pair(k, v):
    g = k.g
    in_c = k.p.in_c
    a = -1
    for j in range(g.offsets[v], g.offsets[v + 1]):
        u = g.nbrs[j]
        k.p.ops[pt.NEIGHBOR_VISITS] += 1
        if not in_c[u]:
            if a < 0:
                a = u
            else:
                return a, u
    return a, -1


@nb.njit(cache=True)
def _adjacent(g, a, b):
    if g.offsets[a + 1] - g.offsets[a] > g.offsets[b + 1] - g.offsets[b]:
        a, b = b, a
    lo = g.offsets[a]
    hi = g.offsets[a + 1]
    i = lo + np.searchsorted(g.nbrs[lo:hi], b)
    return i < hi and g.nbrs[i] == b


@nb.njit(inline="always")
def _is_gain2(k, v):
    return not k.p.in_c[v] and k.p.score[v] == 2


@nb.njit(cache=True)
def _take(k, v):
    add_vertex(k, v)
    if not k.meta[MAX_GAIN_USED]:
        k.fixed[v] = 1


@nb.njit(cache=True)
def triangle_phase(k):
    added = 0
    while queue_size(k, TRI) > 0 or queue_size(k, GAIN2) > 0:
        v = pop(k, TRI) if queue_size(k, TRI) > 0 else pop(k, GAIN2)
        if not _is_gain2(k, v):
            continue
        a, b = _outside_pair(k, v)
        if _adjacent(k.g, a, b):
            _take(k, a)
            _take(k, b)
            k.p.ops[pt.RULE_TRIANGLE] += 1
            added += 2
        else:
            push(k, QUAD, v)
    return added


@nb.njit(cache=True)
def quadrilateral_phase(k):
    g = k.g
    p = k.p
    added = 0
    while queue_size(k, GAIN2) > 0 or queue_size(k, QUAD) > 0:
        v = pop(k, GAIN2) if queue_size(k, GAIN2) > 0 else pop(k, QUAD)
        if not _is_gain2(k, v):
            continue
        a, b = _outside_pair(k, v)
        if _adjacent(g, a, b):
            push(k, TRI, v)
            continue
        # a partner shares both outside neighbours, so it is adjacent to the
        # lower-degree one of them
        x = a if g.offsets[a + 1] - g.offsets[a] <= g.offsets[b + 1] - g.offsets[b] else b
        for j in range(g.offsets[x], g.offsets[x + 1]):
            u = g.nbrs[j]
            p.ops[pt.NEIGHBOR_VISITS] += 1
            if u == v or not _is_gain2(k, u):
                continue
            c, d = _outside_pair(k, u)
            if c == a and d == b:
                _take(k, a)
                _take(k, b)
                p.ops[pt.RULE_QUADRILATERAL] += 1
                added += 2
                break
    return added


@nb.njit(cache=True)
def degree1_phase(k):
    added = 0
    while queue_size(k, DEG1) > 0:
        v = pop(k, DEG1)
        if k.p.in_c[v] or k.p.score[v] != 1:
            continue
        u, _ = _outside_pair(k, v)
        _take(k, u)
        k.p.ops[pt.RULE_DEGREE1] += 1
        added += 1
    return added


@nb.njit(cache=True)
def rules_to_fixpoint(k):
    """Triangle, quadrilateral, degree-1 in turn, repeated while any may apply."""
    added = 0
    while True:
        added += triangle_phase(k)
        added += quadrilateral_phase(k)
        added += degree1_phase(k)
        if queue_size(k, GAIN2) == 0 and queue_size(k, TRI) == 0 and queue_size(k, QUAD) == 0:
            return added


@nb.njit(cache=True)
def seed_worklists(k):
    """Reset the worklists to the current gain-1 and gain-2 regions."""
    p = k.p
    clear_queues(k)
    for which, r in ((DEG1, pt.gain_region(1)), (GAIN2, pt.gain_region(2))):
        if r + 1 < p.start.size:
            for i in range(p.start[r], p.start[r + 1]):
                push(k, which, p.slot[i])


def _run(state: SolverState, phase) -> int:
    k = state.kernel
    seed_worklists(k)
    k.meta[COLLECT] = 1
    try:
        return int(phase(k))
    finally:
        k.meta[COLLECT] = 0


def apply_triangle_rule_to_fixpoint(state: SolverState) -> int:
    """Apply the triangle rule until it no longer fires; returns vertices added."""
    return _run(state, triangle_phase)


def apply_quadrilateral_rule_to_fixpoint(state: SolverState) -> int:
    return _run(state, quadrilateral_phase)


def apply_degree1_rule_to_fixpoint(state: SolverState) -> int:
    return _run(state, degree1_phase)


def apply_rules_to_fixpoint(state: SolverState) -> int:
    """All three rules to their mutual fixpoint, in the construction order."""
    return _run(state, rules_to_fixpoint)


def fixed_set(state: SolverState) -> FixedSet:
    return FixedSet(state.fixed, state.max_gain_used)
