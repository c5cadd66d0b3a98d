"""Loopless directed graphs on at most 64 vertices, stored as bit rows.

Vertex ids are ``0..n-1``.  Row ``out[u]`` has bit ``v`` set iff the arc
``u -> v`` is present; ``inn`` is the transpose.  All graph values are
immutable.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

#: Distance-matrix entry for an unreachable ordered pair.
UNREACHABLE = math.inf


class DigraphError(ValueError):
    """Raised for malformed graph input or an invalid graph construction."""


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Digraph:
    n: int
    out: tuple[int, ...]
    inn: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_VERTICES:
            raise DigraphError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.out) != self.n:
            raise DigraphError("adjacency row count does not match n")
        full = (1 << self.n) - 1
        inn = [0] * self.n
        for u, row in enumerate(self.out):
            if row & ~full:
                raise DigraphError(f"row {u} references a vertex out of range")
            if row >> u & 1:
                raise DigraphError(f"loop at vertex {u}")
            for v in bits(row):
                inn[v] |= 1 << u
        object.__setattr__(self, "inn", tuple(inn))

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Sequence[int]]) -> "Digraph":
        """Build a graph from an arc list, rejecting loops, duplicates and bad ids."""
        if not isinstance(n, int) or isinstance(n, bool) or not 1 <= n <= MAX_VERTICES:
            raise DigraphError(f"vertex count {n!r} outside 1..{MAX_VERTICES}")
        rows = [0] * n
        for arc in arcs:
            if len(arc) != 2:
                raise DigraphError(f"arc {list(arc)!r} is not a pair")
            u, v = arc
            if not all(isinstance(x, int) and not isinstance(x, bool) for x in (u, v)):
                raise DigraphError(f"arc {[u, v]!r} has non-integer endpoints")
            if not (0 <= u < n and 0 <= v < n):
                raise DigraphError(f"arc {[u, v]} has an endpoint out of range")
            if u == v:
                raise DigraphError(f"arc {[u, v]} is a loop")
            if rows[u] >> v & 1:
                raise DigraphError(f"arc {[u, v]} is duplicated")
            rows[u] |= 1 << v
        return cls(n, tuple(rows))

    @property
    def arcs(self) -> list[tuple[int, int]]:
        """All arcs in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.out[u])]

    @property
    def arc_count(self) -> int:
        return sum(row.bit_count() for row in self.out)

    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out[u] >> v & 1)

    def successors(self, u: int) -> list[int]:
        return list(bits(self.out[u]))

    def predecessors(self, v: int) -> list[int]:
        return list(bits(self.inn[v]))

    def with_arcs(self, extra: Iterable[tuple[int, int]]) -> "Digraph":
        return Digraph.from_arcs(self.n, self.arcs + list(extra))

    def without_arcs(self, drop: Iterable[tuple[int, int]]) -> "Digraph":
        rows = list(self.out)
        for u, v in drop:
            rows[u] &= ~(1 << v)
        return Digraph(self.n, tuple(rows))

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DigraphError("relabeling is not a permutation of the vertices")
        rows = [0] * self.n
        for u in range(self.n):
            row = 0
            for v in bits(self.out[u]):
                row |= 1 << perm[v]
            rows[perm[u]] = row
        return Digraph(self.n, tuple(rows))

    def induced(self, vertices: Sequence[int]) -> "Digraph":
        """Induced subgraph, with ``vertices[i]`` becoming vertex ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        arcs = [
            (index[u], index[v])
            for u in vertices
            for v in bits(self.out[u])
            if v in index
        ]
        return Digraph.from_arcs(len(vertices), arcs)


def serialize_digraph(graph: Digraph) -> str:
    """Graph file text: one JSON object, arcs sorted, trailing LF."""
    arcs = [[u, v] for u, v in graph.arcs]
    return json.dumps({"n": graph.n, "arcs": arcs}) + "\n"


def parse_digraph(text: str) -> Digraph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DigraphError(f"graph file is not valid JSON: {exc}") from None
    if not isinstance(data, dict) or set(data) != {"n", "arcs"}:
        raise DigraphError('graph file must be an object with exactly "n" and "arcs"')
    if not isinstance(data["arcs"], list):
        raise DigraphError('"arcs" must be a list')
    for arc in data["arcs"]:
        if not isinstance(arc, list):
            raise DigraphError(f"arc {arc!r} is not a list")
    return Digraph.from_arcs(data["n"], data["arcs"])


def is_oriented(graph: Digraph) -> bool:
    """True iff no pair of vertices is joined in both directions."""
    return all(graph.out[u] & graph.inn[u] == 0 for u in range(graph.n))


def reach_mask(rows: Sequence[int], source: int, blocked: int = 0) -> int:
    """Bitmask of vertices reachable from ``source`` along ``rows``, avoiding ``blocked``.

    ``source`` itself is always included, even when blocked.
    """
    seen = 1 << source
    frontier = seen
    allowed = ~blocked
    while frontier:
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        frontier = nxt & allowed & ~seen
        seen |= frontier
    return seen


def bfs_distances(rows: Sequence[int], source: int) -> list[float]:
    """Distances from ``source`` along ``rows`` (use ``inn`` for distances *to* it)."""
    dist: list[float] = [UNREACHABLE] * len(rows)
    dist[source] = 0
    seen = 1 << source
    frontier = seen
    level = 0
    while frontier:
        level += 1
        nxt = 0
        for u in bits(frontier):
            nxt |= rows[u]
        frontier = nxt & ~seen
        seen |= frontier
        for v in bits(frontier):
            dist[v] = level
    return dist


def distance_matrix(graph: Digraph) -> list[list[float]]:
    """``dist[u][v]`` is the length of a shortest directed path from u to v."""
    return [bfs_distances(graph.out, u) for u in range(graph.n)]


def distances_to(graph: Digraph, root: int) -> list[float]:
    """``d[v] = dist(v, root)``, computed by a backward search from the root."""
    return bfs_distances(graph.inn, root)


def is_strongly_connected(graph: Digraph, removed: int = 0) -> bool:
    """Strong connectivity of the graph with the vertex set ``removed`` deleted."""
    alive = ((1 << graph.n) - 1) & ~removed
    if not alive:
        return True
    start = (alive & -alive).bit_length() - 1
    return (
        reach_mask(graph.out, start, removed) == alive
        and reach_mask(graph.inn, start, removed) == alive
    )


def strong_diameter(graph: Digraph) -> int | None:
    """Largest shortest-path distance over ordered pairs; ``None`` if some pair is unreachable."""
    worst = 0
    for row in distance_matrix(graph):
        far = max(row)
        if far == UNREACHABLE:
            return None
        worst = max(worst, int(far))
    return worst


def _disjoint_paths(graph: Digraph, s: int, t: int, skip_arc: bool, limit: int) -> int:
    """Maximum number of internally vertex-disjoint s->t paths, stopping at ``limit``.

    Unit-capacity max flow on the vertex-split network: vertex ``v`` becomes
    ``v_in = 2v`` and ``v_out = 2v+1`` joined by a capacity-1 arc (unbounded
    for s and t).  When ``skip_arc`` the direct arc s->t is left out.
    """
    n = graph.n
    cap: dict[tuple[int, int], int] = {}
    adj: list[list[int]] = [[] for _ in range(2 * n)]

    def add(x: int, y: int, c: int) -> None:
        if (x, y) not in cap:
            adj[x].append(y)
            adj[y].append(x)
            cap.setdefault((y, x), 0)
        cap[(x, y)] = cap.get((x, y), 0) + c

    for v in range(n):
        add(2 * v, 2 * v + 1, n if v in (s, t) else 1)
    for u, v in graph.arcs:
        if skip_arc and (u, v) == (s, t):
            continue
        add(2 * u + 1, 2 * v, 1)

    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < limit:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in adj[x]:
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    return flow


def strong_connectivity(graph: Digraph) -> int:
    """Vertex strong connectivity via Menger's theorem, capped at ``n - 1``.

    For an ordered pair joined by an arc, the arc counts as one path and the
    remaining paths are counted with that arc removed.
    """
    n = graph.n
    if n < 2:
        raise DigraphError("strong connectivity needs at least 2 vertices")
    if not is_strongly_connected(graph):
        return 0
    best = n - 1
    for s in range(n):
        for t in range(n):
            if s == t:
                continue
            if graph.has_arc(s, t):
                paths = 1 + _disjoint_paths(graph, s, t, True, best - 1)
            else:
                paths = _disjoint_paths(graph, s, t, False, best)
            best = min(best, paths)
            if best <= 1:
                return best
    return best
