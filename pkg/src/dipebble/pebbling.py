"""Exact pebbling on digraphs: solvability, pebbling numbers and classification.

A configuration is a tuple of non-negative pebble counts, one per vertex.
A pebbling move along the arc ``u -> v`` removes two pebbles from ``u`` and
adds one to ``v``.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .digraph import (
    UNREACHABLE,
    Digraph,
    distances_to,
    is_oriented,
    is_strongly_connected,
    strong_connectivity,
    strong_diameter,
)

Configuration = tuple[int, ...]
Move = tuple[int, int]

DEFAULT_NODE_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    """The solver visited more states than its node budget allows."""


class NotStronglyConnected(ValueError):
    """Pebbling numbers are only defined here for strongly connected digraphs."""


def node_budget() -> int:
    raw = os.environ.get("PEBBLE_NODE_BUDGET")
    return int(raw) if raw else DEFAULT_NODE_BUDGET


@dataclass(frozen=True)
class SolveResult:
    solvable: bool
    witness: tuple[Move, ...] = ()


@dataclass(frozen=True)
class RootResult:
    root: int
    rooted_pi: int
    max_unsolvable_witness: Configuration


@dataclass(frozen=True)
class PebblingNumberResult:
    pi: int
    per_root: tuple[RootResult, ...]

    @property
    def witness_root(self) -> RootResult:
        """The smallest root attaining the pebbling number."""
        return next(r for r in self.per_root if r.rooted_pi == self.pi)


@dataclass(frozen=True)
class PebblingClass:
    """``delta = pi - n``: 0 is Class-0, 1 is Class-1, larger values are ``Above(delta)``."""

    delta: int

    def __str__(self) -> str:
        if self.delta == 0:
            return "Class0"
        if self.delta == 1:
            return "Class1"
        return f"Above({self.delta})"

    @classmethod
    def parse(cls, text: str) -> "PebblingClass":
        if text == "Class0":
            return cls(0)
        if text == "Class1":
            return cls(1)
        if text.startswith("Above(") and text.endswith(")"):
            return cls(int(text[6:-1]))
        raise ValueError(f"unknown pebbling class {text!r}")


CLASS0 = PebblingClass(0)
CLASS1 = PebblingClass(1)


@dataclass(frozen=True)
class ConfigurationProfile:
    a0_vertices: frozenset[int]
    a1_vertices: frozenset[int]
    a2_vertices: frozenset[int]
    a3plus_vertices: frozenset[int]

    @property
    def zero_count(self) -> int:
        return len(self.a0_vertices)


def profile(config: Sequence[int]) -> ConfigurationProfile:
    groups: list[set[int]] = [set(), set(), set(), set()]
    for v, c in enumerate(config):
        if c < 0:
            raise ValueError(f"negative pebble count on vertex {v}")
        groups[min(c, 3)].add(v)
    return ConfigurationProfile(*(frozenset(g) for g in groups))


_ACCEPT = ("accept",)


class RootedSolver:
    """Solvability oracle for one (graph, root) pair.

    Results are cached across queries on the same instance, which is sound
    because solvability is a function of the configuration alone.  The node
    budget applies per query.
    """

    def __init__(self, graph: Digraph, root: int, budget: int | None = None) -> None:
        if not 0 <= root < graph.n:
            raise ValueError(f"root {root} out of range for a graph on {graph.n} vertices")
        self.graph = graph
        self.root = root
        self.budget = node_budget() if budget is None else budget
        self.dist = distances_to(graph, root)
        finite = [int(d) for d in self.dist if d != UNREACHABLE]
        self.depth = max(finite)
        # weight of a pebble on v scaled by 2^depth, so the root threshold is 2^depth
        self.weight = [0 if d == UNREACHABLE else 1 << (self.depth - int(d)) for d in self.dist]
        self.threshold = [None if d == UNREACHABLE else 1 << int(d) for d in self.dist]
        # arcs tried nearest-to-root first; arcs into vertices that cannot reach the root are useless
        self.moves: list[Move] = sorted(
            ((u, v) for u, v in graph.arcs if self.dist[v] != UNREACHABLE),
            key=lambda m: (self.dist[m[1]], self.dist[m[0]], m),
        )
        self.cache: dict[Configuration, object] = {}
        self.dead: list[Configuration] = []
        self._visits = 0

    def _accepting(self, state: Configuration) -> bool:
        if state[self.root]:
            return True
        for c, t in zip(state, self.threshold):
            if t is not None and c >= t:
                return True
        return False

    def _dominated(self, state: Configuration) -> bool:
        for dead in self.dead:
            for a, b in zip(state, dead):
                if a > b:
                    break
            else:
                return True
        return False

    def _search(self, state: Configuration) -> bool:
        known = self.cache.get(state)
        if known is not None:
            return known is not False
        self._visits += 1
        if self._visits > self.budget:
            raise BudgetExceeded(f"solver exceeded node budget of {self.budget} states")
        if self._accepting(state):
            self.cache[state] = _ACCEPT
            return True
        if sum(c * w for c, w in zip(state, self.weight)) < self.weight[self.root] or self._dominated(state):
            self.cache[state] = False
            return False
        for u, v in self.moves:
            if state[u] >= 2:
                nxt = list(state)
                nxt[u] -= 2
                nxt[v] += 1
                if self._search(tuple(nxt)):
                    self.cache[state] = (u, v)
                    return True
        self.cache[state] = False
        self.dead.append(state)
        return False

    def _finish(self, state: Configuration) -> list[Move]:
        """Moves pushing pebbles from a vertex holding at least 2^dist along a shortest path."""
        if state[self.root]:
            return []
        v = next(
            v for v, (c, t) in enumerate(zip(state, self.threshold)) if t is not None and c >= t
        )
        moves: list[Move] = []
        amount = state[v]
        while v != self.root:
            w = min(x for x in self.graph.successors(v) if self.dist[x] == self.dist[v] - 1)
            moves.extend([(v, w)] * (amount // 2))
            amount //= 2
            v = w
        return moves

    def witness(self, state: Configuration) -> list[Move]:
        moves: list[Move] = []
        while True:
            step = self.cache[state]
            if step is _ACCEPT:
                return moves + self._finish(state)
            u, v = step
            moves.append((u, v))
            nxt = list(state)
            nxt[u] -= 2
            nxt[v] += 1
            state = tuple(nxt)

    def solvable(self, config: Sequence[int]) -> bool:
        self._visits = 0
        return self._search(tuple(config))

    def solve(self, config: Sequence[int]) -> SolveResult:
        state = tuple(config)
        if self.solvable(state):
            return SolveResult(True, tuple(self.witness(state)))
        return SolveResult(False)


def _check_config(graph: Digraph, config: Sequence[int]) -> Configuration:
    if len(config) != graph.n:
        raise ValueError(f"configuration has {len(config)} entries, graph has {graph.n} vertices")
    if any(c < 0 for c in config):
        raise ValueError("configuration has a negative entry")
    return tuple(int(c) for c in config)


def is_solvable(
    graph: Digraph, config: Sequence[int], root: int, *, budget: int | None = None
) -> SolveResult:
    """Decide whether a pebble can be moved onto ``root``; solvable results carry a witness."""
    state = _check_config(graph, config)
    return RootedSolver(graph, root, budget).solve(state)


def _require_strong(graph: Digraph) -> None:
    if not is_strongly_connected(graph):
        raise NotStronglyConnected("graph is not strongly connected; pebbling number undefined")


def _max_unsolvable(solver: RootedSolver) -> Configuration:
    graph, root = solver.graph, solver.root
    n = graph.n
    caps = [0 if v == root else solver.threshold[v] - 1 for v in range(n)]

    # branch and bound for the largest size
    order = sorted((v for v in range(n) if v != root), key=lambda v: (-caps[v], v))
    suffix = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + caps[order[i]]
    config = [0] * n
    best = -1

    def grow(i: int, size: int) -> None:
        nonlocal best
        if size + suffix[i] <= best:
            return
        if i == len(order):
            best = size
            return
        v = order[i]
        top = 0
        for c in range(caps[v], 0, -1):
            config[v] = c
            if not solver.solvable(config):
                top = c
                break
        for c in range(top, -1, -1):
            config[v] = c
            grow(i + 1, size + c)
        config[v] = 0

    grow(0, 0)

    # lexicographically smallest configuration of that size
    tail = [0] * (n + 1)
    for v in range(n - 1, -1, -1):
        tail[v] = tail[v + 1] + caps[v]
    config = [0] * n

    def pick(v: int, size: int) -> bool:
        if v == n:
            return size == best
        need = best - size
        low = max(0, need - tail[v + 1])
        for c in range(low, min(caps[v], need) + 1):
            config[v] = c
            if c and solver.solvable(config):
                break
            if pick(v + 1, size + c):
                return True
        config[v] = 0
        return False

    found = pick(0, 0)
    assert found, "maximum size reached in phase one must be realisable"
    return tuple(config)


def max_unsolvable(graph: Digraph, root: int, *, budget: int | None = None) -> Configuration:
    """A maximum-size unsolvable configuration for ``root``; ties go to the lexicographically smallest."""
    _require_strong(graph)
    return _max_unsolvable(RootedSolver(graph, root, budget))


def pebbling_number_rooted(graph: Digraph, root: int, *, budget: int | None = None) -> int:
    return 1 + sum(max_unsolvable(graph, root, budget=budget))


def _root_result(args: tuple[Digraph, int, int | None]) -> RootResult:
    graph, root, budget = args
    witness = _max_unsolvable(RootedSolver(graph, root, budget))
    return RootResult(root, 1 + sum(witness), witness)


def pebbling_number(
    graph: Digraph, *, budget: int | None = None, workers: int = 1
) -> PebblingNumberResult:
    """Pebbling number with per-root values; roots may be solved in parallel processes."""
    _require_strong(graph)
    jobs = [(graph, r, budget) for r in range(graph.n)]
    if workers > 1 and graph.n > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            per_root = tuple(pool.map(_root_result, jobs))
    else:
        per_root = tuple(map(_root_result, jobs))
    return PebblingNumberResult(max(r.rooted_pi for r in per_root), per_root)


def classify(graph: Digraph, *, result: PebblingNumberResult | None = None) -> PebblingClass:
    if result is None:
        result = pebbling_number(graph)
    return PebblingClass(result.pi - graph.n)


def compositions(total: int, slots: int) -> Iterator[tuple[int, ...]]:
    """All tuples of ``slots`` non-negative integers summing to ``total``, in lexicographic order."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for bars in combinations(range(total + slots - 1), slots - 1):
        prev = -1
        parts = []
        for b in bars:
            parts.append(b - prev - 1)
            prev = b
        parts.append(total + slots - 1 - prev - 1)
        yield tuple(parts)


def unsolvable_configurations(
    graph: Digraph, root: int, size: int, *, solver: RootedSolver | None = None
) -> Iterator[Configuration]:
    """Every unsolvable configuration of exactly ``size`` pebbles (none on the root)."""
    solver = solver or RootedSolver(graph, root)
    others = [v for v in range(graph.n) if v != root]
    for parts in compositions(size, len(others)):
        config = [0] * graph.n
        for v, c in zip(others, parts):
            config[v] = c
        if not solver.solvable(config):
            yield tuple(config)


def _is_directed_triangle(graph: Digraph) -> bool:
    return graph.n == 3 and graph.arc_count == 3 and is_oriented(graph) and is_strongly_connected(graph)


@dataclass
class Two3No2Report:
    applicable: bool
    passed: bool
    violations: list[dict] = field(default_factory=list)
    checked: int = 0
    reason: str = ""


def verify_two3no2(
    graph: Digraph,
    *,
    result: PebblingNumberResult | None = None,
    time_budget: float | None = None,
) -> Two3No2Report:
    """Check the structure of size-n unsolvable configurations on Class-1 graphs.

    Applies to oriented graphs with strong diameter 2, strong connectivity at
    least 2 and pebbling number n+1.  Every unsolvable configuration with n
    pebbles, for every root, must have no vertex with 2 pebbles, exactly two
    with 3, none with 4 or more, and exactly four empty vertices (root included).
    """
    n = graph.n
    if not is_oriented(graph):
        return Two3No2Report(False, True, reason="not oriented")
    if strong_diameter(graph) != 2:
        return Two3No2Report(False, True, reason="strong diameter is not 2")
    if _is_directed_triangle(graph):
        return Two3No2Report(False, True, reason="directed 3-cycle")
    if strong_connectivity(graph) < 2:
        return Two3No2Report(False, True, reason="strong connectivity below 2")
    if classify(graph, result=result) != CLASS1:
        return Two3No2Report(False, True, reason="not Class-1")

    report = Two3No2Report(True, True)
    start = time.monotonic()
    for root in range(n):
        solver = RootedSolver(graph, root)
        for config in unsolvable_configurations(graph, root, n, solver=solver):
            if time_budget is not None and time.monotonic() - start > time_budget:
                report.violations.append({"root": root, "config": None, "problem": "budget-exceeded"})
                report.passed = False
                return report
            report.checked += 1
            prof = profile(config)
            problems = []
            if prof.a2_vertices:
                problems.append("vertex with 2 pebbles")
            if sum(1 for c in config if c == 3) != 2:
                problems.append("number of 3-pebble vertices is not 2")
            if any(c >= 4 for c in config):
                problems.append("vertex with 4 or more pebbles")
            if prof.zero_count != 4:
                problems.append("number of empty vertices is not 4")
            if problems:
                report.violations.append({"root": root, "config": list(config), "problem": "; ".join(problems)})
    report.passed = not report.violations
    return report
