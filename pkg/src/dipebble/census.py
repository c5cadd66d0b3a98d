"""Exhaustive censuses of small digraphs and theorem checks over them.

A census file holds one JSON object per line, one line per isomorphism
class, in ascending canonical-form order.
"""

from __future__ import annotations

import json
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .canon import canonical_form, enumerate_digraphs
from .constructions import bound_dboundupper
from .digraph import (
    Digraph,
    DigraphError,
    is_oriented,
    is_strongly_connected,
    serialize_digraph,
    strong_connectivity,
    strong_diameter,
)
from .family_f import find_labelings, search_family_f, verify_f_propositions
from .pebbling import (
    CLASS1,
    PebblingClass,
    RootedSolver,
    max_unsolvable,
    pebbling_number,
    verify_two3no2,
)

RECORD_FIELDS = (
    "canonical_form", "n", "arc_count", "oriented", "strong_diameter",
    "strong_connectivity", "pi", "per_root_pi", "class", "witness_config", "graph",
)

THEOREMS = (
    "prop_3orless",
    "thm_noBiN+1",
    "thm_mixed2_bound",
    "thm_two3no2",
    "family_f_soundness",
    "family_f_completeness",
    "thm_dboundupper",
)


class CensusError(ValueError):
    """Malformed census input or an unknown theorem id."""


@dataclass(frozen=True)
class CensusFilter:
    strongly_connected: bool = False
    diameter: int | None = None
    min_connectivity: int | None = None

    @classmethod
    def parse(cls, text: str | None) -> "CensusFilter":
        """Parse ``strongly-connected,diameter=2,connectivity>=2`` style filter lists."""
        kwargs: dict = {}
        for item in filter(None, (text or "").split(",")):
            item = item.strip()
            if item in ("strongly-connected", "strongly_connected", "strong"):
                kwargs["strongly_connected"] = True
            elif item.startswith("diameter="):
                kwargs["diameter"] = int(item.split("=", 1)[1])
            elif item.startswith("connectivity>="):
                kwargs["min_connectivity"] = int(item.split(">=", 1)[1])
            elif item.startswith("connectivity="):
                kwargs["min_connectivity"] = int(item.split("=", 1)[1])
            else:
                raise CensusError(f"unknown census filter {item!r}")
        return cls(**kwargs)

    def __call__(self, graph: Digraph) -> bool:
        if (self.strongly_connected or self.diameter is not None or self.min_connectivity) and not is_strongly_connected(graph):
            return False
        if self.diameter is not None and strong_diameter(graph) != self.diameter:
            return False
        if self.min_connectivity is not None and graph.n > 1:
            return strong_connectivity(graph) >= self.min_connectivity
        return True


def census_record(graph: Digraph) -> dict:
    """Full invariant profile of one graph, fields in file order."""
    strong = is_strongly_connected(graph)
    record = {
        "canonical_form": canonical_form(graph).hex(),
        "n": graph.n,
        "arc_count": graph.arc_count,
        "oriented": is_oriented(graph),
        "strong_diameter": strong_diameter(graph),
        "strong_connectivity": strong_connectivity(graph) if graph.n > 1 else None,
        "pi": None,
        "per_root_pi": None,
        "class": None,
        "witness_config": None,
        "graph": [list(a) for a in graph.arcs],
    }
    if strong:
        result = pebbling_number(graph)
        record["pi"] = result.pi
        record["per_root_pi"] = [r.rooted_pi for r in result.per_root]
        record["class"] = str(PebblingClass(result.pi - graph.n))
        record["witness_config"] = list(result.witness_root.max_unsolvable_witness)
    return record


def record_graph(record: dict) -> Digraph:
    try:
        return Digraph.from_arcs(record["n"], record["graph"])
    except (KeyError, TypeError, DigraphError) as exc:
        raise CensusError(f"malformed census record: {exc}") from None


def witness_root(record: dict) -> int:
    """The smallest root attaining ``pi``; the recorded witness belongs to it."""
    return record["per_root_pi"].index(record["pi"])


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":")) + "\n"


def _atomic_write(path: Path, lines: Iterable[str]) -> int:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            for line in lines:
                fh.write(line)
                count += 1
        os.replace(tmp, path)
    except BaseException:
        os.unlink(tmp)
        raise
    return count


def census_records(
    n: int,
    oriented_only: bool = False,
    filters: CensusFilter | None = None,
    *,
    workers: int = 1,
    long_running: bool = False,
) -> Iterator[dict]:
    graphs = enumerate_digraphs(n, oriented_only, filters, long_running=long_running)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            yield from pool.map(census_record, graphs, chunksize=8)
    else:
        yield from map(census_record, graphs)


def run_census(
    n: int,
    oriented_only: bool,
    filters: CensusFilter | None,
    out: str | os.PathLike,
    *,
    workers: int = 1,
    long_running: bool = False,
) -> int:
    """Write one record per isomorphism class to ``out``; returns the record count."""
    records = census_records(n, oriented_only, filters, workers=workers, long_running=long_running)
    return _atomic_write(Path(out), (_dump(r) for r in records))


def load_records(path: str | os.PathLike) -> list[dict]:
    records = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CensusError(f"line {lineno}: not JSON ({exc})") from None
            if not isinstance(record, dict) or tuple(record) != RECORD_FIELDS:
                raise CensusError(f"line {lineno}: record fields do not match the census schema")
            records.append(record)
    return records


@dataclass
class TheoremReport:
    theorem_id: str
    scope: str
    checked_count: int
    violations: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def vacuous(self) -> bool:
        return self.checked_count == 0

    def as_dict(self) -> dict:
        data = asdict(self)
        data["pass"] = self.passed
        data["vacuous"] = self.vacuous
        return data


def _violation(record: dict, detail: str) -> dict:
    graph_text = serialize_digraph(record_graph(record)).strip()
    return {
        "canonical_form": record["canonical_form"],
        "graph": json.loads(graph_text),
        "detail": detail,
        "reproduce": f"echo '{graph_text}' > g.json && dipebble number --graph g.json",
    }


def _is_strong(record: dict) -> bool:
    return record["pi"] is not None


def _check_3orless(record: dict) -> str | None:
    graph = record_graph(record)
    if any(c > 3 for c in record["witness_config"]):
        return f"recorded witness {record['witness_config']} has a vertex with more than 3 pebbles"
    for root in range(graph.n):
        witness = max_unsolvable(graph, root)
        if any(c > 3 for c in witness):
            return f"root {root}: maximum unsolvable {list(witness)} has a vertex with more than 3 pebbles"
    return None


def _check_two3no2(record: dict, time_budget: float | None) -> str | None:
    report = verify_two3no2(record_graph(record), time_budget=time_budget)
    if not report.applicable:
        return f"recorded as in scope but checker says: {report.reason}"
    if report.passed:
        return None
    return "; ".join(
        f"root {v['root']} config {v['config']}: {v['problem']}" for v in report.violations[:5]
    )


def _check_soundness(record: dict) -> str | None:
    graph = record_graph(record)
    lab = next(find_labelings(graph))
    if record["class"] != str(CLASS1):
        return f"member under labeling {tuple(lab)} but class is {record['class']}"
    failed = [p.name for p in verify_f_propositions(graph, lab) if not p.passed]
    if failed:
        return f"labeling {tuple(lab)} fails propositions {failed}"
    return None


def _in_two3no2_scope(record: dict) -> bool:
    return (
        record["oriented"] and record["strong_diameter"] == 2
        and (record["strong_connectivity"] or 0) >= 2 and record["class"] == str(CLASS1)
    )


def verify_theorem(
    records: str | os.PathLike | list[dict],
    theorem_id: str,
    *,
    time_budget: float | None = None,
) -> TheoremReport:
    """Filter records by the theorem's hypothesis and check its conclusion on each."""
    if theorem_id not in THEOREMS:
        raise CensusError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREMS)}")
    if not isinstance(records, list):
        records = load_records(records)

    if theorem_id == "prop_3orless":
        scope = "strongly connected, strong diameter 2"
        in_scope = lambda r: _is_strong(r) and r["strong_diameter"] == 2
        check = _check_3orless
    elif theorem_id == "thm_noBiN+1":
        scope = "oriented, strong diameter 2"
        in_scope = lambda r: _is_strong(r) and r["oriented"] and r["strong_diameter"] == 2
        check = lambda r: None if r["pi"] <= r["n"] + 1 else f"pi={r['pi']} > n+1={r['n'] + 1}"
    elif theorem_id == "thm_mixed2_bound":
        scope = "strongly connected, strong diameter 2"
        in_scope = lambda r: _is_strong(r) and r["strong_diameter"] == 2
        check = lambda r: None if 2 * r["pi"] < 3 * r["n"] else f"pi={r['pi']} >= 3n/2"
    elif theorem_id == "thm_two3no2":
        scope = "oriented, strong diameter 2, strong connectivity >= 2, Class1"
        in_scope = lambda r: _is_strong(r) and _in_two3no2_scope(r)
        check = lambda r: _check_two3no2(r, time_budget)
    elif theorem_id == "family_f_soundness":
        scope = "members of F (some labeling)"
        in_scope = lambda r: _is_strong(r) and r["n"] >= 6 and next(find_labelings(record_graph(r)), None) is not None
        check = _check_soundness
    elif theorem_id == "family_f_completeness":
        scope = "oriented, strong diameter 2, strong connectivity >= 2, Class1"
        in_scope = lambda r: _is_strong(r) and _in_two3no2_scope(r)
        check = lambda r: None if next(find_labelings(record_graph(r)), None) else "no labeling makes it a member of F"
    else:
        scope = "strongly connected, n >= 2"
        in_scope = lambda r: _is_strong(r) and r["n"] >= 2

        def check(r: dict) -> str | None:
            cap = bound_dboundupper(r["n"], r["strong_diameter"]).ceiling
            return None if r["pi"] <= cap else f"pi={r['pi']} > {cap}"

    report = TheoremReport(theorem_id, scope, 0)
    for record in records:
        if not in_scope(record):
            continue
        report.checked_count += 1
        problem = check(record)
        if problem:
            report.violations.append(_violation(record, problem))
    return report


def check_record(record: dict) -> list[str]:
    """Self-consistency problems of one record (empty when consistent)."""
    problems = []
    graph = record_graph(record)
    if canonical_form(graph).hex() != record["canonical_form"]:
        problems.append("canonical form does not match graph")
    if record["pi"] is None:
        return problems
    if record["pi"] != max(record["per_root_pi"]):
        problems.append("pi is not the maximum per-root value")
        return problems
    if PebblingClass.parse(record["class"]).delta != record["pi"] - record["n"]:
        problems.append("class inconsistent with pi and n")
    if sum(record["witness_config"]) != record["pi"] - 1:
        problems.append("witness size is not pi - 1")
    solver = RootedSolver(graph, witness_root(record))
    if solver.solvable(record["witness_config"]):
        problems.append("witness configuration is solvable")
    return problems


def family_f_records(n: int, limit: int | None = None) -> Iterator[dict]:
    """One record per member of F on n vertices, with its pebbling number and checks."""
    for graph, lab in search_family_f(n, limit):
        result = pebbling_number(graph)
        props = {p.name: p.passed for p in verify_f_propositions(graph, lab)}
        two3no2 = verify_two3no2(graph, result=result)
        yield {
            "graph": {"n": graph.n, "arcs": [list(a) for a in graph.arcs]},
            "labeling": lab._asdict(),
            "pi": result.pi,
            "class": str(PebblingClass(result.pi - graph.n)),
            "propositions": props,
            "two3no2": two3no2.applicable and two3no2.passed,
        }


def write_family_f(n: int, out: str | os.PathLike, limit: int | None = None) -> int:
    return _atomic_write(Path(out), (_dump(r) for r in family_f_records(n, limit)))
