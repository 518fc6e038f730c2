"""Command-line entry point.

    vcover -i graph.dimacs --variant lincom --seeds 1..10 --cutoff 60
    vcover -i graph.dimacs --verify graph.sol
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .bench import InstanceRunConfig, emit_aggregates, load_baseline, run_suite, verify_cover
from .io import VARIANTS, emit_records, read_graph


def parse_seeds(text: str) -> list[int]:
    """``"1..100"`` (inclusive), ``"3"`` or ``"1,5,9"``."""
    seeds: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            a, b = int(lo), int(hi)
            if b < a:
                raise argparse.ArgumentTypeError(f"empty seed range {part!r}")
            seeds.extend(range(a, b + 1))
        elif part:
            seeds.append(int(part))
    if not seeds:
        raise argparse.ArgumentTypeError("no seeds given")
    return seeds


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vcover", description="Minimum vertex cover on large sparse graphs.")
    ap.add_argument("-i", "--instance", action="append", required=True, help="DIMACS or .mtx graph file (repeatable)")
    ap.add_argument("--variant", choices=VARIANTS, default="lincom")
    ap.add_argument("--seeds", type=parse_seeds, default=[1], help="seed range a..b, list, or single seed")
    ap.add_argument("--cutoff", type=float, default=1000.0, help="seconds per run (lincom)")
    ap.add_argument("--max-steps", type=int, default=None, help="step budget per run (lincom)")
    ap.add_argument("--tie-break", choices=("random", "deterministic"), default="random")
    ap.add_argument("--baseline", type=Path, help="CSV with instance,cmin columns to compute delta against")
    ap.add_argument("--out", type=Path, help="write per-run records here (default: stdout)")
    ap.add_argument("--format", choices=("csv", "jsonl"), default="csv")
    ap.add_argument("--jobs", type=int, default=1, help="parallel (instance, seed) runs")
    ap.add_argument("--solutions", type=Path, help="directory for per-run solution files")
    ap.add_argument("--verify", type=Path, metavar="COVERFILE", help="check a solution file and exit")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")

    if args.verify is not None:
        if len(args.instance) != 1:
            print("--verify takes exactly one instance", file=sys.stderr)
            return 2
        graph = read_graph(args.instance[0])
        try:
            ok, edge = verify_cover(graph, args.verify)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
        print("valid" if ok else f"invalid: edge {edge[0]} {edge[1]} uncovered")
        return 0 if ok else 1

    try:
        config = InstanceRunConfig(
            instance_paths=args.instance,
            variant=args.variant,
            seeds=args.seeds,
            cutoff_seconds=args.cutoff,
            max_steps=args.max_steps,
            tie_break=args.tie_break,
            parallel_runs=args.jobs,
            solutions_dir=args.solutions,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    baseline = load_baseline(args.baseline.read_text()) if args.baseline else None
    records, summary = run_suite(config, baseline)

    text = emit_records(records, args.format)
    if args.out:
        args.out.write_text(text)
        args.out.with_name(args.out.stem + ".summary.csv").write_text(emit_aggregates(summary))
    else:
        sys.stdout.write(text)
    sys.stderr.write(emit_aggregates(summary))
    return 1 if any(r.failed for r in records) else 0


if __name__ == "__main__":
    sys.exit(main())
