"""Alternative partitions: vertices bucketed by score in one contiguous array.

The array is cut into regions laid out as::

    [parked][loss-0][gain-0][loss-1][gain-1] ... [loss-D][gain-D]

where ``loss-k`` holds cover vertices whose removal would uncover ``k`` edges,
``gain-k`` holds outside vertices whose insertion would cover ``k`` edges and
``D`` is the maximum degree.  ``parked`` is a dead prefix for fixed cover
vertices that local search may never remove.  Region ``r`` spans
``slot[start[r]:start[r + 1]]``.

Moving a vertex one region left or right is a swap with the boundary element
plus one pointer shift, so every score change is O(1) and locating the
minimum-loss or extreme-gain region costs O(D).
"""

from __future__ import annotations

from typing import NamedTuple

import numba as nb
import numpy as np

# counter slots shared by every kernel that touches the structure
MOVES = 0  # calls of the six move procedures
BOUNDARY_TESTS = 1  # region-emptiness tests while scanning for a score
NEIGHBOR_VISITS = 2
CELL_WRITES = 3  # slot / position / boundary writes
RULE_TRIANGLE = 4
RULE_QUADRILATERAL = 5
RULE_DEGREE1 = 6
MAX_GAIN_PICKS = 7
REDUNDANT_REMOVED = 8

COUNTER_NAMES = (
    "partition_moves",
    "boundary_tests",
    "neighbor_visits",
    "cell_writes",
    "rule_triangle",
    "rule_quadrilateral",
    "rule_degree1",
    "max_gain_picks",
    "redundant_removed",
)

PARKED = 0


class Parts(NamedTuple):
    slot: np.ndarray  # int32, vertex at each position
    pos: np.ndarray  # int32, inverse of slot
    start: np.ndarray  # int64, region boundaries, len = regions + 1
    score: np.ndarray  # int32, gain outside C, loss inside C
    deg: np.ndarray  # int32
    in_c: np.ndarray  # uint8
    parked: np.ndarray  # uint8
    ops: np.ndarray  # int64 counters


@nb.njit(inline="always")
def loss_region(k):
    return 1 + 2 * k


@nb.njit(inline="always")
def gain_region(k):
    return 2 + 2 * k


@nb.njit(inline="always")
def region_of(p, v):
    if p.parked[v]:
        return PARKED
    return 1 + 2 * p.score[v] + 1 - p.in_c[v]


@nb.njit(inline="always")
def region_size(p, r):
    return p.start[r + 1] - p.start[r]


@nb.njit(cache=True)
def layout(p):
    """Counting-sort every vertex into its region; O(|V| + D)."""
    n = p.slot.size
    nr = p.start.size - 1
    counts = np.zeros(nr + 1, np.int64)
    for v in range(n):
        counts[region_of(p, v) + 1] += 1
    for r in range(nr):
        counts[r + 1] += counts[r]
    for r in range(nr + 1):
        p.start[r] = counts[r]
    for v in range(n):
        r = region_of(p, v)
        i = counts[r]
        p.slot[i] = v
        p.pos[v] = i
        counts[r] = i + 1


# single boundary crossings: 2 slot + 2 position + 1 pointer write


@nb.njit(inline="always")
def _hop_up(p, v, r):
    i = p.pos[v]
    b = p.start[r + 1] - 1
    u = p.slot[b]
    p.slot[i] = u
    p.pos[u] = i
    p.slot[b] = v
    p.pos[v] = b
    p.start[r + 1] = b
    p.ops[CELL_WRITES] += 5


@nb.njit(inline="always")
def _hop_down(p, v, r):
    i = p.pos[v]
    f = p.start[r]
    u = p.slot[f]
    p.slot[i] = u
    p.pos[u] = i
    p.slot[f] = v
    p.pos[v] = f
    p.start[r] = f + 1
    p.ops[CELL_WRITES] += 5


# double crossings over the interleaved opposite-side region, done as one
# three-element rotation: 3 slot + 3 position + 2 pointer writes.  Write order
# keeps the result right when v already sits on a boundary or the crossed
# region is empty.


@nb.njit(inline="always")
def _hop2_up(p, v, r):
    i = p.pos[v]
    b1 = p.start[r + 1] - 1
    b2 = p.start[r + 2] - 1
    a = p.slot[b1]
    b = p.slot[b2]
    p.slot[i] = a
    p.slot[b1] = b
    p.slot[b2] = v
    p.pos[b] = b1
    p.pos[a] = i
    p.pos[v] = b2
    p.start[r + 1] = b1
    p.start[r + 2] = b2
    p.ops[CELL_WRITES] += 8


@nb.njit(inline="always")
def _hop2_down(p, v, r):
    i = p.pos[v]
    f1 = p.start[r]
    f2 = p.start[r - 1]
    a = p.slot[f1]
    b = p.slot[f2]
    p.slot[i] = a
    p.slot[f1] = b
    p.slot[f2] = v
    p.pos[b] = f1
    p.pos[a] = i
    p.pos[v] = f2
    p.start[r] = f1 + 1
    p.start[r - 1] = f2 + 1
    p.ops[CELL_WRITES] += 8


@nb.njit(cache=True)
def place_into(p, v):
    if p.in_c[v]:
        raise AssertionError("place_into: vertex already in C")
    _hop_down(p, v, gain_region(p.score[v]))
    p.in_c[v] = 1
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def place_out(p, v):
    if not p.in_c[v] or p.parked[v]:
        raise AssertionError("place_out: vertex not removable from C")
    _hop_up(p, v, loss_region(p.score[v]))
    p.in_c[v] = 0
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def gain_dec(p, v):
    k = p.score[v]
    if p.in_c[v] or k == 0:
        raise AssertionError("gain_dec: vertex in C or gain already 0")
    _hop2_down(p, v, gain_region(k))
    p.score[v] = k - 1
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def gain_inc(p, v):
    k = p.score[v]
    if p.in_c[v] or k >= p.deg[v]:
        raise AssertionError("gain_inc: vertex in C or gain already d(v)")
    _hop2_up(p, v, gain_region(k))
    p.score[v] = k + 1
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def loss_dec(p, v):
    k = p.score[v]
    if not p.in_c[v] or k == 0:
        raise AssertionError("loss_dec: vertex outside C or loss already 0")
    if not p.parked[v]:
        _hop2_down(p, v, loss_region(k))
    p.score[v] = k - 1
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def loss_inc(p, v):
    k = p.score[v]
    if not p.in_c[v] or k >= p.deg[v]:
        raise AssertionError("loss_inc: vertex outside C or loss already d(v)")
    if not p.parked[v]:
        _hop2_up(p, v, loss_region(k))
    p.score[v] = k + 1
    p.ops[MOVES] += 1


@nb.njit(cache=True)
def pick_in_region(p, r, rng, det):
    """Uniform member of region ``r``, or its lowest vertex id when ``det``."""
    lo = p.start[r]
    hi = p.start[r + 1]
    if det:
        best = p.slot[lo]
        for i in range(lo + 1, hi):
            if p.slot[i] < best:
                best = p.slot[i]
        return best
    return p.slot[rng.integers(lo, hi)]


@nb.njit(cache=True)
def min_loss_region(p):
    """Smallest k with a non-empty loss-k region, or -1 if none."""
    top = (p.start.size - 2) // 2
    for k in range(top):
        p.ops[BOUNDARY_TESTS] += 1
        r = loss_region(k)
        if p.start[r + 1] > p.start[r]:
            return k
    return -1


@nb.njit(cache=True)
def random_min_loss_vertex(p, rng, det):
    k = min_loss_region(p)
    if k < 0:
        return -1
    return pick_in_region(p, loss_region(k), rng, det)


@nb.njit(cache=True)
def min_gain_region(p, k0):
    """Smallest k >= k0 with a non-empty gain-k region, or -1."""
    top = (p.start.size - 2) // 2
    for k in range(k0, top):
        p.ops[BOUNDARY_TESTS] += 1
        r = gain_region(k)
        if p.start[r + 1] > p.start[r]:
            return k
    return -1


@nb.njit(cache=True)
def max_gain_region(p, k0):
    """Largest k <= k0 with a non-empty gain-k region, or -1."""
    k = k0
    while k >= 0:
        p.ops[BOUNDARY_TESTS] += 1
        r = gain_region(k)
        if p.start[r + 1] > p.start[r]:
            return k
        k -= 1
    return -1


def new_parts(degrees: np.ndarray) -> Parts:
    """Partitions with every vertex outside C in its gain-d(v) region."""
    n = degrees.size
    d_max = int(degrees.max()) if n else 0
    p = Parts(
        slot=np.empty(n, np.int32),
        pos=np.empty(n, np.int32),
        start=np.zeros(2 * (d_max + 1) + 2, np.int64),
        score=degrees.astype(np.int32),
        deg=degrees.astype(np.int32),
        in_c=np.zeros(n, np.uint8),
        parked=np.zeros(n, np.uint8),
        ops=np.zeros(len(COUNTER_NAMES), np.int64),
    )
    layout(p)
    return p


class AltPartitions:
    """Python face of :class:`Parts` for inspection, tests and debugging.

    The solver kernels work on the underlying ``Parts`` tuple directly.
    """

    def __init__(self, parts: Parts):
        self.parts = parts

    @property
    def d_max(self) -> int:
        return (self.parts.start.size - 2) // 2 - 1

    @property
    def slot(self) -> np.ndarray:
        return self.parts.slot

    @property
    def position(self) -> np.ndarray:
        return self.parts.pos

    @property
    def score(self) -> np.ndarray:
        return self.parts.score

    @property
    def in_cover(self) -> np.ndarray:
        return self.parts.in_c.astype(bool)

    @property
    def loss_start(self) -> np.ndarray:
        return self.parts.start[1:-1:2]

    @property
    def gain_start(self) -> np.ndarray:
        return self.parts.start[2:-1:2]

    @property
    def removable_count(self) -> int:
        p = self.parts
        return int(np.count_nonzero(p.in_c.astype(bool) & ~p.parked.astype(bool)))

    @property
    def counters(self) -> dict[str, int]:
        return dict(zip(COUNTER_NAMES, (int(x) for x in self.parts.ops)))

    def region(self, side: str, k: int) -> np.ndarray:
        r = loss_region(k) if side == "loss" else gain_region(k)
        return self.parts.slot[self.parts.start[r]:self.parts.start[r + 1]].copy()

    def parked(self) -> np.ndarray:
        return self.parts.slot[: self.parts.start[1]].copy()

    def place_vertex_into_c(self, v: int) -> None:
        place_into(self.parts, v)

    def place_vertex_outof_c(self, v: int) -> None:
        place_out(self.parts, v)

    def gain_minus_minus(self, v: int) -> None:
        gain_dec(self.parts, v)

    def gain_plus_plus(self, v: int) -> None:
        gain_inc(self.parts, v)

    def loss_minus_minus(self, v: int) -> None:
        loss_dec(self.parts, v)

    def loss_plus_plus(self, v: int) -> None:
        loss_inc(self.parts, v)

    def random_min_loss_vertex(self, rng: np.random.Generator, deterministic: bool = False) -> int:
        v = random_min_loss_vertex(self.parts, rng, deterministic)
        if v < 0:
            raise RuntimeError("all cover vertices fixed: no removable vertex")
        return int(v)

    def min_gain_partition(self) -> int:
        k = min_gain_region(self.parts, 1)
        if k < 0:
            raise RuntimeError("no vertex outside C has positive gain")
        return int(k)

    def max_gain_partition(self, start: int | None = None) -> int:
        k = max_gain_region(self.parts, self.d_max if start is None else start)
        if k <= 0:
            raise RuntimeError("no vertex outside C has positive gain")
        return int(k)

    def dump(self) -> str:
        lines = []
        if self.parts.start[1]:
            lines.append("parked: " + " ".join(f"v{v}" for v in self.parked()))
        for k in range(self.d_max + 1):
            loss = " ".join(f"v{v}" for v in self.region("loss", k))
            gain = " ".join(f"v{v}" for v in self.region("gain", k))
            lines.append(f"loss-{k}: {loss} | gain-{k}: {gain}".replace("  ", " "))
        return "\n".join(lines)


def init_partitions(graph) -> AltPartitions:
    return AltPartitions(new_parts(graph.degrees))
