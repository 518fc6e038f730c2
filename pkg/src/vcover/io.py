"""DIMACS graph files, solution files and run-record tables."""

from __future__ import annotations

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence, TextIO, Union

import numpy as np

from .graph import Graph, GraphError, build_graph
from .partitions import COUNTER_NAMES

log = logging.getLogger(__name__)

VARIANTS = ("lincom", "initvc-only", "min-gain", "max-gain")
CSV_COLUMNS = ("instance", "variant", "seed", "cutoff", "cmin", "cavg", "optimal", "steps", "elapsed")


class DimacsError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass
class RunRecord:
    instance_name: str
    solver_variant: str
    seed: int
    cutoff_seconds: Optional[float]
    cover_size_min: Optional[int]
    cover_size_avg: Optional[float]
    optimal_guaranteed: bool
    steps: int
    elapsed_seconds: float
    op_counters: dict[str, int] = field(default_factory=dict)
    error: Optional[str] = None

    @property
    def failed(self) -> bool:
        return self.error is not None


def _lines(source: Union[str, TextIO, Iterable[str]]) -> Iterable[str]:
    if isinstance(source, str):
        return io.StringIO(source)
    return source


def parse_dimacs(source: Union[str, TextIO, Iterable[str]]) -> Graph:
    """Parse ``p edge n m`` / ``e u v`` text (1-based ids) into a Graph.

    ``source`` is a text stream, an iterable of lines, or the text itself.
    The declared edge count is advisory; a mismatch after removing loops and
    duplicates is only logged.
    """
    n = None
    declared_m = 0
    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(_lines(source), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        kind = tokens[0]
        if kind == "p":
            if n is not None:
                raise DimacsError("second problem line", lineno)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise DimacsError(f"expected 'p edge <n> <m>', got {raw.strip()!r}", lineno)
            try:
                n, declared_m = int(tokens[2]), int(tokens[3])
            except ValueError:
                raise DimacsError(f"non-integer size in {raw.strip()!r}", lineno) from None
            if n < 0 or declared_m < 0:
                raise DimacsError("negative size on problem line", lineno)
        elif kind == "e":
            if n is None:
                raise DimacsError("edge line before the problem line", lineno)
            if len(tokens) != 3:
                raise DimacsError(f"expected 'e <u> <v>', got {raw.strip()!r}", lineno)
            try:
                u, v = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise DimacsError(f"non-integer vertex id in {raw.strip()!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                bad = u if not 1 <= u <= n else v
                raise DimacsError(f"vertex id {bad} outside 1..{n}", lineno)
            us.append(u - 1)
            vs.append(v - 1)
        else:
            raise DimacsError(f"unknown line type {kind!r}", lineno)
    if n is None:
        raise DimacsError("missing 'p edge' problem line")
    try:
        graph = build_graph(np.column_stack((np.array(us, np.int64), np.array(vs, np.int64))), n)
    except GraphError as exc:
        raise DimacsError(str(exc)) from exc
    if graph.edge_count != declared_m:
        log.warning(
            "declared %d edges, kept %d (%d loops/duplicates dropped)", declared_m, graph.edge_count, graph.dropped
        )
    return graph


def read_dimacs(path: Union[str, Path]) -> Graph:
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        return parse_dimacs(fh)


def parse_matrix_market(source: Union[str, TextIO, Iterable[str]]) -> Graph:
    """Read a Matrix Market coordinate file as an undirected graph.

    Only the pattern is used: ``rows cols nnz`` header, then ``i j [value]``
    lines with 1-based ids. Both triangles may be present; duplicates drop.
    """
    n = None
    us: list[int] = []
    vs: list[int] = []
    for lineno, raw in enumerate(_lines(source), start=1):
        tokens = raw.split()
        if not tokens or tokens[0].startswith("%"):
            continue
        try:
            nums = [int(t) for t in tokens[:3 if n is None else 2]]
        except ValueError:
            raise DimacsError(f"non-integer entry in {raw.strip()!r}", lineno) from None
        if n is None:
            if len(nums) != 3:
                raise DimacsError("expected 'rows cols entries' header", lineno)
            n = max(nums[0], nums[1])
            continue
        if len(nums) != 2:
            raise DimacsError(f"expected 'i j', got {raw.strip()!r}", lineno)
        u, v = nums
        if not (1 <= u <= n and 1 <= v <= n):
            raise DimacsError(f"vertex id {u if not 1 <= u <= n else v} outside 1..{n}", lineno)
        us.append(u - 1)
        vs.append(v - 1)
    if n is None:
        raise DimacsError("missing size header")
    return build_graph(np.column_stack((np.array(us, np.int64), np.array(vs, np.int64))), n)


def read_graph(path: Union[str, Path]) -> Graph:
    """DIMACS by default; ``.mtx`` files as Matrix Market."""
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        if str(path).endswith(".mtx"):
            return parse_matrix_market(fh)
        return parse_dimacs(fh)


def write_dimacs(graph: Graph) -> str:
    out = [f"p edge {graph.vertex_count} {graph.edge_count}"]
    out.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges.tolist())
    return "\n".join(out) + "\n"


def write_solution(cover: Iterable[int], optimal: bool) -> str:
    ids = sorted(int(v) + 1 for v in cover)
    lines = [f"s vc {len(ids)} {'optimal' if optimal else 'unknown'}"]
    lines.extend(f"v {v}" for v in ids)
    return "\n".join(lines) + "\n"


def parse_solution(source: Union[str, TextIO, Iterable[str]]) -> list[int]:
    """0-based cover from ``v <id>`` lines (bare ids accepted; ``s``/``c`` skipped)."""
    cover = []
    for lineno, raw in enumerate(_lines(source), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] in ("s", "c"):
            continue
        token = tokens[1] if tokens[0] == "v" and len(tokens) == 2 else tokens[0]
        try:
            cover.append(int(token) - 1)
        except ValueError:
            raise DimacsError(f"bad cover line {raw.strip()!r}", lineno) from None
    return cover


def _counter_columns(records: Sequence[RunRecord]) -> list[str]:
    extra = sorted({name for r in records for name in r.op_counters} - set(COUNTER_NAMES))
    return list(COUNTER_NAMES) + extra


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _row(r: RunRecord) -> dict:
    return {
        "instance": r.instance_name,
        "variant": r.solver_variant,
        "seed": r.seed,
        "cutoff": r.cutoff_seconds,
        "cmin": r.cover_size_min,
        "cavg": r.cover_size_avg,
        "optimal": r.optimal_guaranteed,
        "steps": r.steps,
        "elapsed": round(r.elapsed_seconds, 6),
    }


def emit_records(records: Sequence[RunRecord], format: str = "csv") -> str:
    """Serialise run records as CSV (default) or JSON lines."""
    if format == "csv":
        counters = _counter_columns(records)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(list(CSV_COLUMNS) + [f"counter:{c}" for c in counters])
        for r in records:
            row = _row(r)
            writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS] + [_fmt(r.op_counters.get(c)) for c in counters])
        return buf.getvalue()
    if format in ("jsonl", "json-lines"):
        out = []
        for r in records:
            obj = _row(r)
            obj["counters"] = {k: r.op_counters[k] for k in _counter_columns([r]) if k in r.op_counters}
            if r.error is not None:
                obj["error"] = r.error
            out.append(json.dumps(obj, sort_keys=False))
        return "".join(line + "\n" for line in out)
    raise ValueError(f"unknown format {format!r}")


def load_records(text: str) -> list[RunRecord]:
    """Inverse of the CSV branch of :func:`emit_records`."""
    records = []
    for row in csv.DictReader(io.StringIO(text)):
        counters = {k.split(":", 1)[1]: int(v) for k, v in row.items() if k.startswith("counter:") and v != ""}
        records.append(
            RunRecord(
                instance_name=row["instance"],
                solver_variant=row["variant"],
                seed=int(row["seed"]),
                cutoff_seconds=float(row["cutoff"]) if row["cutoff"] else None,
                cover_size_min=int(row["cmin"]) if row["cmin"] else None,
                cover_size_avg=float(row["cavg"]) if row["cavg"] else None,
                optimal_guaranteed=row["optimal"] == "true",
                steps=int(row["steps"]),
                elapsed_seconds=float(row["elapsed"]),
                op_counters=counters,
            )
        )
    return records
