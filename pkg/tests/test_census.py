import json

import pytest

from dipebble.canon import canonical_form
from dipebble.census import (
    RECORD_FIELDS,
    THEOREMS,
    CensusError,
    CensusFilter,
    census_record,
    check_record,
    load_records,
    record_graph,
    run_census,
    verify_theorem,
    witness_root,
)
from dipebble.constructions import build_mixed2
from dipebble.digraph import Digraph, DigraphError, parse_digraph

from graphs import cycle
from oracles import arcs_of, brute_solvable

DIAM2 = CensusFilter.parse("strongly-connected,diameter=2")


@pytest.fixture(scope="module")
def general4(tmp_path_factory):
    path = tmp_path_factory.mktemp("census") / "general4.jsonl"
    run_census(4, False, DIAM2, path)
    return load_records(path)


def test_filter_parse():
    f = CensusFilter.parse("strongly-connected,diameter=2,connectivity>=2")
    assert f == CensusFilter(True, 2, 2)
    assert CensusFilter.parse(None) == CensusFilter()
    with pytest.raises(CensusError):
        CensusFilter.parse("bogus")


def test_triangle_census(tmp_path):
    out = tmp_path / "c3.jsonl"
    assert run_census(3, True, DIAM2, out) == 1
    (record,) = load_records(out)
    assert record["pi"] == 4 and record["class"] == "Class1"
    assert canonical_form(record_graph(record)) == canonical_form(cycle(3))


def test_two_vertex_census_keeps_weak_graphs(tmp_path):
    out = tmp_path / "c2.jsonl"
    assert run_census(2, False, None, out) == 3
    records = load_records(out)
    strong = [r for r in records if r["pi"] is not None]
    assert len(strong) == 1
    assert strong[0]["pi"] == 2 and strong[0]["class"] == "Class0" and strong[0]["arc_count"] == 2
    assert all(r["class"] is None for r in records if r is not strong[0])


def test_oriented_four_vertex_diameter_two_scope_is_empty(tmp_path):
    out = tmp_path / "c4.jsonl"
    assert run_census(4, True, DIAM2, out) == 0
    report = verify_theorem(out, "thm_noBiN+1")
    assert report.passed and report.vacuous and report.checked_count == 0


def test_record_field_order():
    record = census_record(cycle(3))
    assert tuple(record) == RECORD_FIELDS
    line = json.dumps(record, separators=(",", ":"))
    assert line.startswith('{"canonical_form":')


def test_census_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_census(4, False, DIAM2, a)
    run_census(4, False, DIAM2, b)
    assert a.read_bytes() == b.read_bytes()
    run_census(4, False, DIAM2, a)
    assert a.read_bytes() == b.read_bytes()


def test_parallel_census_matches_serial(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run_census(4, False, DIAM2, a)
    run_census(4, False, DIAM2, b, workers=2)
    assert a.read_bytes() == b.read_bytes()


def test_records_are_self_consistent(general4):
    assert len(general4) == 42
    keys = [r["canonical_form"] for r in general4]
    assert keys == sorted(keys) and len(set(keys)) == len(keys)
    for record in general4:
        assert check_record(record) == []
        g = record_graph(record)
        assert not brute_solvable(g.n, arcs_of(g), record["witness_config"], witness_root(record))


def test_check_record_detects_tampering(general4):
    record = dict(general4[0])
    record["pi"] += 1
    assert check_record(record)
    record = dict(general4[0])
    record["witness_config"] = [0] * record["n"]
    record["witness_config"][witness_root(record)] = record["pi"] - 1
    assert check_record(record) == ["witness configuration is solvable"]
    record = dict(general4[0])
    record["class"] = "Above(5)"
    assert check_record(record) == ["class inconsistent with pi and n"]


@pytest.mark.parametrize("theorem", ["thm_mixed2_bound", "prop_3orless", "thm_dboundupper"])
def test_theorems_over_general_four(general4, theorem):
    report = verify_theorem(general4, theorem)
    assert report.passed and report.checked_count == 42


def test_noBiN_over_general_four_is_vacuous(general4):
    report = verify_theorem(general4, "thm_noBiN+1")
    assert report.passed and report.vacuous


def test_family_theorems_over_oriented_six(tmp_path):
    out = tmp_path / "o6.jsonl"
    run_census(6, True, CensusFilter.parse("strongly-connected,diameter=2,connectivity>=2"), out)
    for theorem in ("family_f_soundness", "family_f_completeness", "thm_two3no2", "thm_noBiN+1"):
        report = verify_theorem(out, theorem)
        assert report.passed, report.violations
        assert report.checked_count > 0


def test_two3no2_budget_exhaustion_is_a_violation(tmp_path):
    out = tmp_path / "o6.jsonl"
    run_census(6, True, CensusFilter.parse("strongly-connected,diameter=2,connectivity>=2"), out)
    report = verify_theorem(out, "thm_two3no2", time_budget=0.0)
    assert not report.passed
    assert any("budget-exceeded" in v["detail"] for v in report.violations)


def test_violations_are_reproducible():
    g = build_mixed2(2).graph
    record = census_record(g)
    record["pi"] = 99
    record["per_root_pi"] = [99] * g.n
    report = verify_theorem([record], "thm_mixed2_bound")
    assert not report.passed
    (violation,) = report.violations
    assert parse_digraph(json.dumps(violation["graph"])) == g
    assert "dipebble number" in violation["reproduce"]
    assert report.as_dict()["pass"] is False


def test_unknown_theorem():
    with pytest.raises(CensusError):
        verify_theorem([], "thm_nonsense")
    assert len(THEOREMS) == 7


def test_malformed_records(tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("not json\n")
    with pytest.raises(CensusError):
        load_records(bad)
    bad.write_text('{"n":3}\n')
    with pytest.raises(CensusError):
        load_records(bad)
    record = census_record(cycle(3))
    record["graph"] = [[0, 0]]
    with pytest.raises(CensusError):
        verify_theorem([record], "prop_3orless")


def test_unsupported_order(tmp_path):
    with pytest.raises(DigraphError):
        run_census(8, True, None, tmp_path / "x.jsonl")
    assert not (tmp_path / "x.jsonl").exists()


def test_weak_record_has_nulls():
    record = census_record(Digraph.from_arcs(3, [(0, 1), (1, 2)]))
    assert record["pi"] is None and record["strong_diameter"] is None
    assert record["strong_connectivity"] == 0
    assert check_record(record) == []
