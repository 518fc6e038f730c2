"""Run solver variants over instances and seeds, and summarise the results."""

from __future__ import annotations

import csv
import io
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .constructors import init_vc, max_gain_construct_vc, min_gain_construct_vc
from .graph import Graph
from .io import VARIANTS, RunRecord, parse_solution, read_graph, write_solution
from .search import SearchConfig, solve

log = logging.getLogger(__name__)


@dataclass
class InstanceRunConfig:
    instance_paths: Sequence[Union[str, Path]]
    variant: str = "lincom"
    seeds: Sequence[int] = tuple(range(1, 101))
    cutoff_seconds: Optional[float] = 1000.0
    max_steps: Optional[int] = None
    tie_break: str = "random"
    parallel_runs: int = 1
    solutions_dir: Optional[Path] = None

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown variant {self.variant!r}; choose from {', '.join(VARIANTS)}")
        if not self.seeds:
            raise ValueError("at least one seed is required")
        if self.cutoff_seconds is not None and self.cutoff_seconds <= 0:
            raise ValueError("cutoff must be positive")
        if self.parallel_runs < 1:
            raise ValueError("parallel_runs must be at least 1")


@dataclass
class Aggregate:
    instance: str
    variant: str
    runs: int
    failed: int
    cmin: Optional[int]
    cavg: Optional[float]
    optimal: bool
    delta: Optional[int] = None


def run_variant(graph: Graph, variant: str, seed: int, cutoff: Optional[float] = None,
                max_steps: Optional[int] = None, tie_break: str = "random"):
    """One run; returns ``(cover, optimal, steps, counters)``."""
    det = tie_break == "deterministic"
    if variant == "lincom":
        out = solve(graph, SearchConfig(seed=seed, cutoff=cutoff, max_steps=max_steps, tie_break=tie_break))
        return out.best_cover, out.opt_info.value == "optimal-guaranteed", out.steps, out.op_counters
    rng = np.random.default_rng(seed)
    build = {"initvc-only": init_vc, "min-gain": min_gain_construct_vc, "max-gain": max_gain_construct_vc}[variant]
    res = build(graph, rng, deterministic=det)
    return res.cover, res.optimal, 0, res.op_counters


@lru_cache(maxsize=4)
def _load(path: str) -> Graph:
    return read_graph(path)


def _task(args) -> RunRecord:
    path, variant, seed, cutoff, max_steps, tie_break, solutions_dir = args
    name = Path(path).stem
    t0 = time.perf_counter()
    try:
        graph = _load(str(path))
        cover, optimal, steps, counters = run_variant(graph, variant, seed, cutoff, max_steps, tie_break)
    except Exception as exc:  # keep the suite going on bad instances
        log.error("%s seed %d failed: %s", path, seed, exc)
        return RunRecord(name, variant, seed, cutoff, None, None, False, 0, time.perf_counter() - t0, {}, str(exc))
    elapsed = time.perf_counter() - t0
    if solutions_dir is not None:
        out = Path(solutions_dir) / f"{name}.{variant}.s{seed}.sol"
        out.write_text(write_solution(cover, optimal))
    size = int(len(cover))
    return RunRecord(name, variant, seed, cutoff, size, float(size), bool(optimal), int(steps), elapsed, counters)


def run_suite(config: InstanceRunConfig, baseline: Optional[dict[str, int]] = None):
    """Every (instance, seed) pair once; returns ``(records, aggregates)``."""
    if config.solutions_dir is not None:
        Path(config.solutions_dir).mkdir(parents=True, exist_ok=True)
    tasks = [
        (str(p), config.variant, s, config.cutoff_seconds, config.max_steps, config.tie_break, config.solutions_dir)
        for p in config.instance_paths
        for s in config.seeds
    ]
    if config.parallel_runs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.parallel_runs) as pool:
            records = list(pool.map(_task, tasks))
    else:
        records = [_task(t) for t in tasks]
    return records, aggregate(records, baseline)


def aggregate(records: Sequence[RunRecord], baseline: Optional[dict[str, int]] = None) -> list[Aggregate]:
    """Per-instance C_min / C_avg; ``delta`` is baseline C_min minus ours."""
    groups: dict[tuple[str, str], list[RunRecord]] = {}
    for r in records:
        groups.setdefault((r.instance_name, r.solver_variant), []).append(r)
    rows = []
    for (name, variant), group in groups.items():
        ok = [r for r in group if not r.failed]
        sizes = [r.cover_size_min for r in ok]
        cmin = min(sizes) if sizes else None
        row = Aggregate(
            instance=name,
            variant=variant,
            runs=len(group),
            failed=len(group) - len(ok),
            cmin=cmin,
            cavg=statistics.fmean(sizes) if sizes else None,
            optimal=bool(ok) and len(ok) == len(group) and all(r.optimal_guaranteed for r in ok),
        )
        if baseline is not None and name in baseline and cmin is not None:
            row.delta = baseline[name] - cmin
        rows.append(row)
    return rows


def load_baseline(text: str) -> dict[str, int]:
    """Instance -> smallest ``cmin`` from a records or summary CSV."""
    best: dict[str, int] = {}
    for row in csv.DictReader(io.StringIO(text)):
        if not row.get("cmin"):
            continue
        name, size = row["instance"], int(float(row["cmin"]))
        best[name] = min(size, best.get(name, size))
    return best


def emit_aggregates(rows: Sequence[Aggregate]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["instance", "variant", "runs", "failed", "cmin", "cavg", "optimal", "delta"])
    for a in rows:
        writer.writerow([
            a.instance, a.variant, a.runs, a.failed,
            "" if a.cmin is None else a.cmin,
            "" if a.cavg is None else f"{a.cavg:.2f}",
            "true" if a.optimal else "false",
            "" if a.delta is None else a.delta,
        ])
    return buf.getvalue()


def verify_cover(graph: Graph, cover_file) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check a solution file against the graph.

    Returns ``(valid, first_uncovered_edge)`` with 1-based endpoints.
    Raises ValueError for ids outside the graph.
    """
    if isinstance(cover_file, Path) or (isinstance(cover_file, str) and "\n" not in cover_file):
        cover_file = Path(cover_file).read_text()
    cover = parse_solution(cover_file)
    in_c = np.zeros(graph.vertex_count, bool)
    for v in cover:
        if not 0 <= v < graph.vertex_count:
            raise ValueError(f"unknown vertex id {v + 1}")
        in_c[v] = True
    eu, ev = graph.csr.eu, graph.csr.ev
    bad = np.flatnonzero(~in_c[eu] & ~in_c[ev])
    if bad.size:
        e = bad[0]
        return False, (int(eu[e]) + 1, int(ev[e]) + 1)
    return True, None
