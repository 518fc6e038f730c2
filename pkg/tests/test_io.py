import io
import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vcover.graph import random_graph
from vcover.io import (
    CSV_COLUMNS,
    DimacsError,
    RunRecord,
    emit_records,
    load_records,
    parse_dimacs,
    parse_matrix_market,
    parse_solution,
    read_dimacs,
    read_graph,
    write_dimacs,
    write_solution,
)


def test_triangle():
    g = parse_dimacs("p edge 3 3\ne 1 2\ne 1 3\ne 2 3")
    assert g.edges.tolist() == [[0, 1], [0, 2], [1, 2]]


def test_comment_and_single_edge():
    g = parse_dimacs("c comment\np edge 2 1\ne 1 2")
    assert g.vertex_count == 2 and g.edge_count == 1


def test_id_exceeds_declared():
    with pytest.raises(DimacsError, match="vertex id 3") as info:
        parse_dimacs("p edge 2 1\ne 1 3")
    assert info.value.line == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("e 1 2\n", 1),
        ("p edge 2 1\ne 1 x\n", 2),
        ("p edge 2 1\ne 0 1\n", 2),
        ("p edge two 1\n", 1),
        ("p edge 2 1\np edge 2 1\n", 2),
        ("p edge 2 1\nq 1 2\n", 2),
    ],
)
def test_errors_carry_line(text, line):
    with pytest.raises(DimacsError) as info:
        parse_dimacs(text)
    assert info.value.line == line


def test_missing_problem_line():
    with pytest.raises(DimacsError, match="problem line"):
        parse_dimacs("c nothing here\n")


def test_col_header_and_duplicates(caplog):
    g = parse_dimacs("p col 3 3\ne 1 2\ne 2 1\ne 2 3\n")
    assert g.edge_count == 2
    assert "declared 3" in caplog.text


def test_stream_and_file(tmp_path):
    text = "p edge 3 2\ne 1 2\ne 2 3\n"
    assert parse_dimacs(io.StringIO(text)) == parse_dimacs(text)
    path = tmp_path / "g.dimacs"
    path.write_text(text)
    assert read_dimacs(path) == parse_dimacs(text)


@given(st.integers(1, 30), st.floats(0, 1), st.integers(0, 1000))
@settings(max_examples=50, deadline=None)
def test_dimacs_round_trip(n, p, seed):
    g = random_graph(n, p, seed)
    assert parse_dimacs(write_dimacs(g)) == g


def test_solution_round_trip():
    text = write_solution([4, 0, 2], optimal=True)
    assert text.splitlines()[0] == "s vc 3 optimal"
    assert parse_solution(text) == [0, 2, 4]
    assert write_solution([], False).startswith("s vc 0 unknown")
    assert parse_solution("1\n3\n") == [0, 2]


def record(seed, name="g", error=None):
    return RunRecord(name, "lincom", seed, 10.0, 5, 5.0, False, 100, 0.25, {"partition_moves": 7}, error)


def test_empty_csv_is_header_only():
    text = emit_records([], "csv")
    assert text.count("\n") == 1
    assert text.startswith(",".join(CSV_COLUMNS))


def test_jsonl_one_object_per_line():
    text = emit_records([record(1)], "json-lines")
    lines = text.splitlines()
    assert len(lines) == 1
    obj = json.loads(lines[0])
    for key in ("instance", "variant", "seed", "cutoff", "cmin", "cavg", "optimal", "steps", "elapsed", "counters"):
        assert key in obj
    assert obj["counters"]["partition_moves"] == 7


def test_two_seeds_two_rows():
    text = emit_records([record(1), record(2)], "csv")
    rows = text.splitlines()[1:]
    assert len(rows) == 2 and all(r.startswith("g,") for r in rows)


def test_csv_round_trip():
    recs = [record(1), record(2, name="h")]
    back = load_records(emit_records(recs))
    assert [(r.instance_name, r.seed, r.cover_size_min, r.op_counters["partition_moves"]) for r in back] == [
        ("g", 1, 5, 7),
        ("h", 2, 5, 7),
    ]


def test_failed_record_serialises():
    bad = RunRecord("x", "lincom", 1, 10.0, None, None, False, 0, 0.0, {}, "boom")
    obj = json.loads(emit_records([bad], "jsonl"))
    assert obj["error"] == "boom" and obj["cmin"] is None
    assert load_records(emit_records([bad]))[0].cover_size_min is None


def test_unknown_format():
    with pytest.raises(ValueError):
        emit_records([], "xml")


def test_matrix_market(tmp_path):
    text = "%%MatrixMarket matrix coordinate pattern symmetric\n% c\n3 3 3\n2 1\n3 1\n3 2\n"
    g = parse_matrix_market(text)
    assert g.edges.tolist() == [[0, 1], [0, 2], [1, 2]]
    path = tmp_path / "k3.mtx"
    path.write_text(text)
    assert read_graph(path) == g
    with pytest.raises(DimacsError) as info:
        parse_matrix_market("3 3 1\n1 4\n")
    assert info.value.line == 2
