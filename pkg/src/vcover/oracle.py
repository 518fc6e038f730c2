"""Ground truth for small instances and slow reference heuristics.

Nothing here touches the partition structure; these routines exist so the
fast paths can be checked against something written independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .graph import Graph

EXACT_LIMIT = 26
ENUMERATE_LIMIT = 14


@dataclass(frozen=True)
class ExactResult:
    optimum_size: int
    one_optimal_cover: frozenset[int]
    all_minimum_covers: Optional[tuple[frozenset[int], ...]] = None


def is_vertex_cover(graph: Graph, cover) -> bool:
    mask = np.zeros(graph.vertex_count, bool)
    mask[np.asarray(list(cover), dtype=np.int64)] = True
    return bool(np.all(mask[graph.csr.eu] | mask[graph.csr.ev]))


def recompute_scores(graph: Graph, in_cover: np.ndarray) -> np.ndarray:
    """Score of every vertex straight from the definitions.

    For ``v`` outside the cover: number of uncovered edges at ``v`` (gain).
    For ``v`` inside: number of edges covered by ``v`` alone (loss).
    """
    c = np.asarray(in_cover, bool)
    eu, ev = graph.csr.eu, graph.csr.ev
    n = graph.vertex_count
    cu, cv = c[eu], c[ev]
    uncovered = ~cu & ~cv
    only_u = cu & ~cv
    only_v = cv & ~cu
    score = np.bincount(eu[uncovered], minlength=n) + np.bincount(ev[uncovered], minlength=n)
    score += np.bincount(eu[only_u], minlength=n) + np.bincount(ev[only_v], minlength=n)
    return score


def _bit_adjacency(graph: Graph) -> list[int]:
    adj = [0] * graph.vertex_count
    for u, v in graph.edges.tolist():
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _matching_bound(adj: list[int], active: int) -> int:
    free = active
    size = 0
    while free:
        low = free & -free
        u = low.bit_length() - 1
        free ^= low
        mates = adj[u] & free
        if mates:
            free ^= mates & -mates
            size += 1
    return size


def exact_min_vc(graph: Graph, enumerate_all: bool = False) -> ExactResult:
    """Exact minimum vertex cover by branch and bound.

    Branches on a maximum-degree vertex (take it, or take all its neighbours)
    and prunes with a greedy maximal matching bound.  With ``enumerate_all``
    every minimum cover is listed as well.
    """
    n = graph.vertex_count
    if n > EXACT_LIMIT:
        raise ValueError(f"exact search limited to {EXACT_LIMIT} vertices, got {n}")
    if enumerate_all and n > ENUMERATE_LIMIT:
        raise ValueError(f"enumeration limited to {ENUMERATE_LIMIT} vertices, got {n}")
    adj = _bit_adjacency(graph)
    best_size = n
    best_cover = (1 << n) - 1

    def search(active: int, taken: int, size: int) -> None:
        nonlocal best_size, best_cover
        pick, pick_deg = -1, 0
        rest = active
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            rest ^= low
            d = (adj[v] & active).bit_count()
            if d > pick_deg:
                pick, pick_deg = v, d
        if pick_deg == 0:
            if size < best_size:
                best_size, best_cover = size, taken
            return
        if size + _matching_bound(adj, active) >= best_size:
            return
        bit = 1 << pick
        search(active & ~bit, taken | bit, size + 1)
        nbrs = adj[pick] & active
        search(active & ~nbrs & ~bit, taken | nbrs, size + nbrs.bit_count())

    search((1 << n) - 1, 0, 0)
    cover = frozenset(v for v in range(n) if best_cover >> v & 1)

    all_covers = None
    if enumerate_all:
        found = []
        for subset in combinations(range(n), best_size):
            mask = 0
            for v in subset:
                mask |= 1 << v
            if all(mask >> v & 1 or adj[v] & ~mask == 0 for v in range(n)):
                found.append(frozenset(subset))
        all_covers = tuple(found)
    return ExactResult(best_size, cover, all_covers)


def brute_force_optimum(graph: Graph) -> int:
    """Smallest cover size over all 2^n subsets; for checking the oracle itself."""
    n = graph.vertex_count
    eu = graph.csr.eu.astype(np.int64)
    ev = graph.csr.ev.astype(np.int64)
    masks = np.arange(1 << n, dtype=np.int64)
    covered = np.ones(masks.size, bool)
    for u, v in zip(eu, ev):
        covered &= ((masks >> u) & 1 | (masks >> v) & 1).astype(bool)
    sizes = np.array([bin(int(x)).count("1") for x in masks])
    return int(sizes[covered].min())


def _choose(candidates: np.ndarray, tie_break: str, rng: Optional[np.random.Generator]) -> int:
    if tie_break == "deterministic":
        return int(candidates[0])
    return int(rng.choice(candidates))


def naive_max_gain(graph: Graph, tie_break: str = "deterministic", rng=None) -> list[int]:
    """Max-gain greedy with a full rescan per pick (quadratic)."""
    gain = graph.degrees.astype(np.int64)
    in_c = np.zeros(graph.vertex_count, bool)
    uncovered = graph.edge_count
    cover = []
    while uncovered > 0:
        cand = np.where(in_c, -1, gain)
        best = cand.max()
        v = _choose(np.flatnonzero(cand == best), tie_break, rng)
        in_c[v] = True
        uncovered -= gain[v]
        cover.append(v)
        for u in graph.neighbors(v).tolist():
            if not in_c[u]:
                gain[u] -= 1
    return sorted(cover)


def naive_min_gain(graph: Graph, tie_break: str = "deterministic", rng=None) -> list[int]:
    """Min-positive-gain greedy, adding all neighbours of the pick, rescanning every round."""
    gain = graph.degrees.astype(np.int64)
    in_c = np.zeros(graph.vertex_count, bool)
    uncovered = graph.edge_count
    cover = []
    big = graph.vertex_count + 1
    while uncovered > 0:
        cand = np.where(in_c | (gain == 0), big, gain)
        best = cand.min()
        v = _choose(np.flatnonzero(cand == best), tie_break, rng)
        for w in graph.neighbors(v).tolist():
            if in_c[w]:
                continue
            in_c[w] = True
            uncovered -= gain[w]
            cover.append(w)
            for u in graph.neighbors(w).tolist():
                if not in_c[u]:
                    gain[u] -= 1
    return sorted(cover)
