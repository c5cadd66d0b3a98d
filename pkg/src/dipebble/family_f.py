"""Membership, H-sets, structural checks and exhaustive search for the family F.

A member is a 2-strongly-connected oriented graph of strong diameter 2
carrying the oriented 6-cycle p->c<-q->b->r<-a<-p such that

* every path from p to r contains a, or both c and b;
* every path from q to r contains b, or both c and a;
* every path from c to r contains a or b.

Each path condition is evaluated by deleting vertices: the p condition
holds iff r is unreachable from p once {a, c} is deleted and once {a, b}
is deleted, and likewise for q and c.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, NamedTuple

from .canon import canonical_labeling
from .digraph import (
    Digraph,
    DigraphError,
    bits,
    is_oriented,
    is_strongly_connected,
    reach_mask,
    strong_connectivity,
    strong_diameter,
)

MAX_SEARCH_VERTICES = 8


class FamilyFLabeling(NamedTuple):
    p: int
    q: int
    a: int
    b: int
    c: int
    r: int

    @classmethod
    def parse(cls, text: str) -> "FamilyFLabeling":
        parts = [int(x) for x in text.split(",")]
        if len(parts) != 6:
            raise ValueError("labeling needs six comma-separated vertex ids p,q,a,b,c,r")
        return cls(*parts)


CYCLE_ARCS = ("pc", "qc", "qb", "br", "ar", "pa")


class NotAMember(ValueError):
    """Raised when an operation requires a member of F."""


@dataclass(frozen=True)
class HSets:
    h_a: frozenset[int]
    h_b: frozenset[int]
    h_c: frozenset[int]
    h_ab: frozenset[int]


@dataclass(frozen=True)
class FamilyFReport:
    oriented: bool
    two_connected: bool
    diameter_two: bool
    cycle: bool
    p_condition: bool
    q_condition: bool
    c_condition: bool
    h_sets: HSets | None

    @property
    def member(self) -> bool:
        return all((
            self.oriented, self.two_connected, self.diameter_two,
            self.cycle, self.p_condition, self.q_condition, self.c_condition,
        ))

    def as_dict(self) -> dict:
        return {
            "oriented": self.oriented,
            "two_connected": self.two_connected,
            "diameter_two": self.diameter_two,
            "cycle": self.cycle,
            "p_condition": self.p_condition,
            "q_condition": self.q_condition,
            "c_condition": self.c_condition,
            "member": self.member,
        }


def _validate(graph: Digraph, lab: FamilyFLabeling) -> None:
    if graph.n < 6:
        raise DigraphError(f"a labeling needs six distinct vertices; graph has {graph.n}")
    if len(set(lab)) != 6:
        raise DigraphError(f"labeling {tuple(lab)} repeats a vertex")
    if not all(0 <= v < graph.n for v in lab):
        raise DigraphError(f"labeling {tuple(lab)} has a vertex out of range")


def _blocks(rows, source: int, target: int, *deleted: int) -> bool:
    """True iff ``target`` cannot be reached from ``source`` with ``deleted`` removed."""
    mask = 0
    for v in deleted:
        mask |= 1 << v
    return not reach_mask(rows, source, mask) >> target & 1


def path_conditions(rows, lab: FamilyFLabeling) -> tuple[bool, bool, bool]:
    p, q, a, b, c, r = lab
    return (
        _blocks(rows, p, r, a, c) and _blocks(rows, p, r, a, b),
        _blocks(rows, q, r, b, c) and _blocks(rows, q, r, b, a),
        _blocks(rows, c, r, a, b),
    )


def _cycle_present(graph: Digraph, lab: FamilyFLabeling) -> bool:
    named = lab._asdict()
    return all(graph.has_arc(named[x], named[y]) for x, y in CYCLE_ARCS)


def check_family_f(graph: Digraph, labeling: FamilyFLabeling) -> FamilyFReport:
    lab = FamilyFLabeling(*labeling)
    _validate(graph, lab)
    oriented = is_oriented(graph)
    report = FamilyFReport(
        oriented,
        strong_connectivity(graph) >= 2,
        strong_diameter(graph) == 2,
        _cycle_present(graph, lab),
        *path_conditions(graph.out, lab),
        None,
    )
    if report.member:
        return FamilyFReport(*[getattr(report, f) for f in (
            "oriented", "two_connected", "diameter_two", "cycle",
            "p_condition", "q_condition", "c_condition",
        )], _h_sets(graph, lab))
    return report


def path_interiors(graph: Digraph, source: int, target: int, avoid: int = 0) -> set[int]:
    """Vertices strictly inside some simple directed source->target path missing ``avoid``.

    Exhaustive simple-path search; a branch is cut as soon as the target is
    unreachable without revisiting the current path.
    """
    found: set[int] = set()
    out = graph.out

    def extend(v: int, used: int, inner: list[int]) -> None:
        for w in bits(out[v] & ~used):
            if w == target:
                found.update(inner)
            elif not reach_mask(out, w, used | avoid) >> target & 1:
                continue
            else:
                inner.append(w)
                extend(w, used | 1 << w, inner)
                inner.pop()

    if not avoid >> source & 1:
        extend(source, (1 << source) | avoid & ~(1 << target), [])
    return found


def _h_sets(graph: Digraph, lab: FamilyFLabeling) -> HSets:
    p, q, a, b, c, r = lab
    six = set(lab)
    h_a = path_interiors(graph, p, a, 1 << c) - six
    h_b = path_interiors(graph, q, b, 1 << c) - six
    h_c = (path_interiors(graph, c, a) | path_interiors(graph, c, b)) - h_a - h_b - six
    h_ab = (path_interiors(graph, a, r, 1 << b) | path_interiors(graph, b, r, 1 << a)) - six
    return HSets(frozenset(h_a), frozenset(h_b), frozenset(h_c), frozenset(h_ab))


def compute_h_sets(graph: Digraph, labeling: FamilyFLabeling) -> HSets:
    report = check_family_f(graph, labeling)
    if not report.member:
        raise NotAMember("H-sets are only defined for members of F")
    return report.h_sets


@dataclass(frozen=True)
class PropositionResult:
    name: str
    passed: bool
    failures: tuple[str, ...] = ()


def _propositions(graph: Digraph, lab: FamilyFLabeling, h: HSets) -> list[PropositionResult]:
    p, q, a, b, c, r = lab
    arc = graph.has_arc
    results = []

    def record(name: str, failures: list[str]) -> None:
        results.append(PropositionResult(name, not failures, tuple(failures)))

    record("h_a_to_a", [f"{v}-/->{a}" for v in sorted(h.h_a) if not arc(v, a)]
           + [f"{v}-/->{b}" for v in sorted(h.h_b) if not arc(v, b)])
    record("h_a_not_to_b", [f"{v}->{b}" for v in sorted(h.h_a) if arc(v, b)]
           + [f"{v}->{a}" for v in sorted(h.h_b) if arc(v, a)])
    record("a_b_to_h_ab", [f"{x}-/->{v}" for v in sorted(h.h_ab) for x in (a, b) if not arc(x, v)])
    record("h_c_to_a_or_b", [f"{v}" for v in sorted(h.h_c) if not (arc(v, a) or arc(v, b))])
    record("h_a_not_to_h_c", [
        f"{u}->{v}" for u in sorted(h.h_a | h.h_b) for v in sorted(h.h_c) if arc(u, v)
    ])
    record("c_to_a_or_b", [] if arc(c, a) or arc(c, b) else [f"{c}-/->{a} and {c}-/->{b}"])
    missing = []
    if not arc(c, a) and not arc(b, a):
        missing.append(f"{c}-/->{a} but {b}-/->{a}")
    if not arc(c, b) and not arc(a, b):
        missing.append(f"{c}-/->{b} but {a}-/->{b}")
    record("c_not_to_a_then_b_to_a", missing)
    core = graph.induced(sorted(h.h_ab) + [r])
    d = strong_diameter(core)
    record("h_ab_r_diameter_2", [] if d is not None and d <= 2 else [f"strong diameter {d}"])
    return results


def verify_f_propositions(graph: Digraph, labeling: FamilyFLabeling) -> list[PropositionResult]:
    """Evaluate the structural properties every member of F must have.

    Universally quantified items over empty H-sets pass vacuously.
    """
    lab = FamilyFLabeling(*labeling)
    return _propositions(graph, lab, compute_h_sets(graph, lab))


def check_propositions_unchecked(graph: Digraph, labeling: FamilyFLabeling) -> list[PropositionResult]:
    """Same checks as :func:`verify_f_propositions` without requiring membership."""
    lab = FamilyFLabeling(*labeling)
    _validate(graph, lab)
    return _propositions(graph, lab, _h_sets(graph, lab))


def find_labelings(graph: Digraph) -> Iterator[FamilyFLabeling]:
    """All labelings under which the graph is a member of F, in lexicographic order."""
    if graph.n < 6 or not is_oriented(graph):
        return
    if strong_diameter(graph) != 2 or strong_connectivity(graph) < 2:
        return
    for six in permutations(range(graph.n), 6):
        lab = FamilyFLabeling(*six)
        if _cycle_present(graph, lab) and all(path_conditions(graph.out, lab)):
            yield lab


def is_member(graph: Digraph) -> bool:
    return next(find_labelings(graph), None) is not None


# ---------------------------------------------------------------- search

P, Q, A, B, C, R = range(6)
SEARCH_LABELING = FamilyFLabeling(P, Q, A, B, C, R)
_FORCED = ((P, C), (Q, C), (Q, B), (B, R), (A, R), (P, A))
# (source, deleted vertices) pairs whose deletion must cut the source off from r
_CUTS = ((P, (A, C)), (P, (A, B)), (Q, (B, C)), (Q, (B, A)), (C, (A, B)))


def _forbidden_arcs(out: list[int], inn: list[int]) -> set[tuple[int, int]]:
    """Absent arcs whose addition alone would break a path condition."""
    bad = set()
    for source, deleted in _CUTS:
        mask = (1 << deleted[0]) | (1 << deleted[1])
        fwd = reach_mask(out, source, mask)
        back = reach_mask(inn, R, mask)
        for u in bits(fwd):
            for v in bits(back & ~out[u]):
                if u != v:
                    bad.add((u, v))
    return bad


def _diameter_two_possible(rows: list[int], full: int) -> bool:
    for u, row in enumerate(rows):
        seen = row | 1 << u
        for v in bits(row):
            seen |= rows[v]
        if seen != full:
            return False
    return True


def _search_labelled(n: int, limit: int | None) -> dict[bytes, tuple[Digraph, FamilyFLabeling]]:
    full = (1 << n) - 1
    out = [0] * n
    inn = [0] * n
    for u, v in _FORCED:
        out[u] |= 1 << v
        inn[v] |= 1 << u
    forced_pairs = {frozenset(e) for e in _FORCED}
    open_pairs = [
        (u, v) for u in range(n) for v in range(u + 1, n) if frozenset((u, v)) not in forced_pairs
    ]
    found: dict[bytes, tuple[Digraph, FamilyFLabeling]] = {}

    def add(u: int, v: int) -> None:
        out[u] |= 1 << v
        inn[v] |= 1 << u

    def drop(u: int, v: int) -> None:
        out[u] &= ~(1 << v)
        inn[v] &= ~(1 << u)

    def leaf() -> None:
        graph = Digraph(n, tuple(out))
        if strong_connectivity(graph) < 2 or strong_diameter(graph) != 2:
            return
        if not check_family_f(graph, SEARCH_LABELING).member:
            raise AssertionError("search produced a graph the checker rejects")
        key, perm = canonical_labeling(graph)
        lab = FamilyFLabeling(*(perm[v] for v in SEARCH_LABELING))
        if key not in found or lab < found[key][1]:
            found[key] = (graph.relabel(perm), lab)

    def descend(pending: list[tuple[int, int]]) -> bool:
        """Returns False once the class limit is reached."""
        if limit is not None and len(found) >= limit:
            return False
        bad = _forbidden_arcs(out, inn)
        options = []
        optimistic = out[:]
        for u, v in pending:
            choice = [x for x in ((u, v), (v, u)) if x not in bad]
            options.append(choice)
            for x, y in choice:
                optimistic[x] |= 1 << y
        if not _diameter_two_possible(optimistic, full):
            return True
        if not pending:
            leaf()
            return True
        if not _strongly_2_possible(n, optimistic):
            return True
        i = min(range(len(pending)), key=lambda j: (len(options[j]), j))
        rest = pending[:i] + pending[i + 1:]
        for x, y in options[i]:
            add(x, y)
            going = descend(rest)
            drop(x, y)
            if not going:
                return False
        return descend(rest)

    descend(open_pairs)
    return found


def _strongly_2_possible(n: int, rows: list[int]) -> bool:
    """Strong connectivity >= 2, tested as: strongly connected after deleting any one vertex."""
    graph = Digraph(n, tuple(rows))
    return is_strongly_connected(graph) and all(is_strongly_connected(graph, 1 << v) for v in range(n))


def search_family_f(n: int, limit: int | None = None) -> Iterator[tuple[Digraph, FamilyFLabeling]]:
    """Members of F on n vertices, one per isomorphism class, ascending by canonical form.

    Without ``limit`` the search is exhaustive, so an empty result proves F
    has no member of that order.  Each graph is returned in canonical
    labelling together with the smallest labeling found for it.
    """
    if n > MAX_SEARCH_VERTICES:
        raise DigraphError(f"search supports n <= {MAX_SEARCH_VERTICES}")
    if n < 6:
        return
    found = _search_labelled(n, limit)
    for key in sorted(found):
        yield found[key]
