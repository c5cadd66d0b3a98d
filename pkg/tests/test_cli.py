import io
import json

import pytest

from dipebble.cli import main, parse_config
from dipebble.digraph import parse_digraph, serialize_digraph

from graphs import cycle


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(serialize_digraph(cycle(3)))
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_config():
    assert parse_config("[0,4,0]", 3) == (0, 4, 0)
    assert parse_config("1:3,2:1", 3) == (0, 3, 1)
    with pytest.raises(ValueError):
        parse_config("[0,4]", 3)
    with pytest.raises(ValueError):
        parse_config("5:1", 3)


def test_solve(capsys, triangle_file):
    code, out, _ = run(capsys, "solve", "--graph", triangle_file, "--root", "0", "--config", "[0,4,0]")
    assert code == 0
    data = json.loads(out)
    assert data["solvable"] and data["witness"] == [[1, 2], [1, 2], [2, 0]]


def test_solve_unsolvable(capsys, triangle_file):
    code, out, _ = run(capsys, "solve", "--graph", triangle_file, "--root", "0", "--config", "1:3")
    assert code == 0 and json.loads(out) == {"solvable": False, "witness": []}
    code, _, _ = run(capsys, "solve", "--graph", triangle_file, "--root", "0", "--config", "1:3",
                     "--expect-solvable")
    assert code == 1


def test_solve_budget(capsys, tmp_path, monkeypatch):
    from dipebble.constructions import build_mixed2

    path = tmp_path / "m3.json"
    path.write_text(serialize_digraph(build_mixed2(3).graph))
    monkeypatch.setenv("PEBBLE_NODE_BUDGET", "2")
    code, _, err = run(capsys, "solve", "--graph", str(path), "--root", "6", "--config", "0:3,1:3,2:3")
    assert code == 3 and "budget" in err


def test_number(capsys, triangle_file):
    code, out, _ = run(capsys, "number", "--graph", triangle_file)
    data = json.loads(out)
    assert code == 0 and data["pi"] == 4
    assert [r["rooted_pi"] for r in data["per_root"]] == [4, 4, 4]
    code, out, _ = run(capsys, "number", "--graph", triangle_file, "--root", "1")
    assert json.loads(out) == {"root": 1, "rooted_pi": 4}


def test_number_from_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(serialize_digraph(cycle(3))))
    code, out, _ = run(capsys, "number", "--graph", "-")
    assert code == 0 and json.loads(out)["pi"] == 4


def test_classify(capsys, triangle_file):
    code, out, _ = run(capsys, "classify", "--graph", triangle_file)
    assert code == 0 and out.strip() == "Class1"


def test_input_errors(capsys, tmp_path, triangle_file):
    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,"arcs":[[0,0]]}')
    code, _, err = run(capsys, "classify", "--graph", str(bad))
    assert code == 2 and "loop" in err
    code, _, _ = run(capsys, "classify", "--graph", str(tmp_path / "missing.json"))
    assert code == 2
    weak = tmp_path / "weak.json"
    weak.write_text('{"n":2,"arcs":[[0,1]]}')
    code, _, _ = run(capsys, "number", "--graph", str(weak))
    assert code == 2
    code, _, _ = run(capsys, "solve", "--graph", triangle_file, "--root", "0", "--config", "[1]")
    assert code == 2


def test_construct(capsys, tmp_path):
    out = tmp_path / "layered.json"
    code, _, _ = run(capsys, "construct", "layered", "--d", "3", "--k", "2", "--out", str(out))
    assert code == 0
    g = parse_digraph(out.read_text())
    assert g.n == 7
    sidecar = json.loads((tmp_path / "layered.sidecar.json").read_text())
    assert sidecar == {"root": 6, "extremal_config": [7, 7, 0, 0, 0, 0, 0], "parameters": {"d": 3, "k": 2}}
    code, _, _ = run(capsys, "construct", "mixed2", "--k", "2", "--out", str(tmp_path / "m.json"))
    assert code == 0 and parse_digraph((tmp_path / "m.json").read_text()).n == 5
    code, _, _ = run(capsys, "construct", "layered", "--k", "2", "--out", str(out))
    assert code == 2
    code, _, _ = run(capsys, "construct", "mixed2", "--k", "0", "--out", str(out))
    assert code == 2


def test_family_f_search_and_check(capsys, tmp_path):
    out = tmp_path / "f6.jsonl"
    code, text, _ = run(capsys, "family-f", "search", "--n", "6", "--out", str(out))
    assert code == 0 and "4 member classes" in text and "exhaustive" in text
    records = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(records) == 4
    first = records[0]
    graph = tmp_path / "member.json"
    graph.write_text(json.dumps(first["graph"]))
    lab = ",".join(str(first["labeling"][k]) for k in "pqabcr")
    code, text, _ = run(capsys, "family-f", "check", "--graph", str(graph), "--labels", lab)
    data = json.loads(text)
    assert code == 0 and data["member"] and all(data["propositions"].values())
    code, text, _ = run(capsys, "family-f", "check", "--graph", str(graph), "--labels", "0,0,1,2,3,4")
    assert code == 2


def test_census_and_verify(capsys, tmp_path):
    out = tmp_path / "c.jsonl"
    code, text, _ = run(capsys, "census", "--n", "3", "--oriented", "--filter",
                        "strongly-connected,diameter=2", "--out", str(out))
    assert code == 0 and "1 records" in text
    code, text, _ = run(capsys, "verify", "--records", str(out), "--theorem", "thm_noBiN+1")
    report = json.loads(text)
    assert code == 0 and report["pass"] and report["checked_count"] == 1


def test_verify_violation_exit_code(capsys, tmp_path):
    from dipebble.census import census_record

    record = census_record(cycle(3))
    record["pi"] = 10
    record["per_root_pi"] = [10, 10, 10]
    path = tmp_path / "tampered.jsonl"
    path.write_text(json.dumps(record, separators=(",", ":")) + "\n")
    code, text, _ = run(capsys, "verify", "--records", str(path), "--theorem", "thm_noBiN+1")
    assert code == 1 and not json.loads(text)["pass"]


def test_verify_budget_exit_code(capsys, tmp_path):
    out = tmp_path / "o6.jsonl"
    run(capsys, "census", "--n", "6", "--oriented", "--filter",
        "strongly-connected,diameter=2,connectivity>=2", "--out", str(out))
    code, _, _ = run(capsys, "verify", "--records", str(out), "--theorem", "thm_two3no2",
                     "--time-budget", "0")
    assert code == 3


def test_verify_errors(capsys, tmp_path):
    bad = tmp_path / "bad.jsonl"
    bad.write_text("{}\n")
    code, _, _ = run(capsys, "verify", "--records", str(bad), "--theorem", "prop_3orless")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--records", str(bad), "--theorem", "nope"])
    assert exc.value.code == 2


def test_census_unsupported_order(capsys, tmp_path):
    code, _, err = run(capsys, "census", "--n", "7", "--out", str(tmp_path / "x.jsonl"))
    assert code == 2 and err
