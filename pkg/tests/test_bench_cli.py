import csv
import io
import json

import pytest

from vcover.bench import InstanceRunConfig, aggregate, load_baseline, run_suite, run_variant, verify_cover
from vcover.cli import main, parse_seeds
from vcover.graph import cycle_graph, petersen_graph, star_graph
from vcover.io import VARIANTS, parse_dimacs, write_dimacs, write_solution


@pytest.fixture
def instances(tmp_path):
    paths = {}
    for name, g in {"petersen": petersen_graph(), "star": star_graph(5), "c4": cycle_graph(4)}.items():
        path = tmp_path / f"{name}.dimacs"
        path.write_text(write_dimacs(g))
        paths[name] = path
    return paths


def test_verify_examples():
    g = parse_dimacs("p edge 3 3\ne 1 2\ne 1 3\ne 2 3")
    assert verify_cover(g, "s vc 2 unknown\nv 1\nv 2\n") == (True, None)
    assert verify_cover(g, "s vc 1 unknown\nv 1\n") == (False, (2, 3))
    with pytest.raises(ValueError, match="unknown vertex id 9"):
        verify_cover(g, "v 9\nv 1\n")


def test_verify_from_file(tmp_path):
    g = star_graph(3)
    sol = tmp_path / "s.sol"
    sol.write_text(write_solution([0], True))
    assert verify_cover(g, sol) == (True, None)
    assert verify_cover(g, str(sol)) == (True, None)


@pytest.mark.parametrize("variant", VARIANTS)
def test_run_variant_valid(variant):
    g = petersen_graph()
    cover, optimal, steps, counters = run_variant(g, variant, 3, cutoff=None, max_steps=500)
    assert verify_cover(g, write_solution(cover, optimal))[0]
    assert counters


def test_run_suite_and_aggregate(instances):
    cfg = InstanceRunConfig([instances["petersen"], instances["star"]], seeds=[1, 2, 3], cutoff_seconds=None,
                            max_steps=2000)
    records, summary = run_suite(cfg)
    assert len(records) == 6
    by_name = {a.instance: a for a in summary}
    assert by_name["petersen"].cmin == 6 and by_name["petersen"].runs == 3
    assert by_name["star"].cmin == 1 and by_name["star"].optimal
    assert not by_name["petersen"].optimal


def test_baseline_delta(instances):
    cfg = InstanceRunConfig([instances["petersen"]], seeds=[1], cutoff_seconds=None, max_steps=2000)
    records, summary = run_suite(cfg, baseline={"petersen": 7})
    assert summary[0].delta == 1
    assert load_baseline("instance,cmin\npetersen,7\npetersen,8\n") == {"petersen": 7}


def test_failed_instance_does_not_stop_suite(instances, tmp_path):
    bad = tmp_path / "bad.dimacs"
    bad.write_text("p edge 2 1\ne 1 3\n")
    cfg = InstanceRunConfig([bad, instances["c4"]], seeds=[1], variant="initvc-only")
    records, summary = run_suite(cfg)
    assert records[0].failed and "vertex id 3" in records[0].error
    assert not records[1].failed and records[1].cover_size_min == 2
    assert {a.instance: a.failed for a in summary} == {"bad": 1, "c4": 0}


def test_parallel_matches_serial(instances):
    kwargs = dict(seeds=[1, 2], cutoff_seconds=None, max_steps=3000)
    paths = [instances["petersen"], instances["c4"]]
    serial, _ = run_suite(InstanceRunConfig(paths, **kwargs))
    par, _ = run_suite(InstanceRunConfig(paths, parallel_runs=2, **kwargs))
    key = lambda r: (r.instance_name, r.seed, r.cover_size_min, r.steps)
    assert [key(r) for r in serial] == [key(r) for r in par]


def test_config_validation():
    with pytest.raises(ValueError, match="unknown variant"):
        InstanceRunConfig(["x"], variant="greedy")
    with pytest.raises(ValueError):
        InstanceRunConfig(["x"], seeds=[])
    with pytest.raises(ValueError):
        InstanceRunConfig(["x"], parallel_runs=0)


def test_aggregate_skips_failed():
    from vcover.io import RunRecord

    recs = [
        RunRecord("g", "lincom", 1, 1.0, 4, 4.0, False, 10, 0.1, {}),
        RunRecord("g", "lincom", 2, 1.0, 6, 6.0, False, 10, 0.1, {}),
        RunRecord("g", "lincom", 3, 1.0, None, None, False, 0, 0.0, {}, "err"),
    ]
    (row,) = aggregate(recs)
    assert (row.cmin, row.cavg, row.failed, row.runs) == (4, 5.0, 1, 3)


def test_parse_seeds():
    assert parse_seeds("1..4") == [1, 2, 3, 4]
    assert parse_seeds("7") == [7]
    assert parse_seeds("1,5,9") == [1, 5, 9]


def test_cli_csv_and_summary(instances, tmp_path, capsys):
    out = tmp_path / "runs.csv"
    sols = tmp_path / "sols"
    code = main(["-i", str(instances["petersen"]), "--seeds", "1..2", "--max-steps", "1000", "--cutoff", "5",
                 "--out", str(out), "--solutions", str(sols)])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert [r["seed"] for r in rows] == ["1", "2"]
    assert all(r["cmin"] == "6" for r in rows)
    assert (tmp_path / "runs.summary.csv").exists()
    assert "petersen" in capsys.readouterr().err

    sol = sols / "petersen.lincom.s1.sol"
    assert main(["-i", str(instances["petersen"]), "--verify", str(sol)]) == 0
    assert capsys.readouterr().out.strip() == "valid"


def test_cli_verify_invalid(instances, tmp_path, capsys):
    sol = tmp_path / "bad.sol"
    sol.write_text("s vc 1 unknown\nv 1\n")
    assert main(["-i", str(instances["c4"]), "--verify", str(sol)]) == 1
    assert capsys.readouterr().out.startswith("invalid: edge")


def test_cli_jsonl_stdout(instances, capsys):
    code = main(["-i", str(instances["star"]), "--variant", "max-gain", "--seeds", "3", "--format", "jsonl"])
    assert code == 0
    obj = json.loads(capsys.readouterr().out.splitlines()[0])
    assert obj["variant"] == "max-gain" and obj["cmin"] == 1


def test_cli_failure_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.dimacs"
    bad.write_text("nonsense\n")
    assert main(["-i", str(bad), "--variant", "min-gain"]) == 1
