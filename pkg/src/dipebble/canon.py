"""Exact canonical forms and isomorphism-free enumeration of small digraphs."""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from typing import Callable, Iterator

from .digraph import Digraph, DigraphError, bits

#: Largest order accepted by :func:`canonical_form`.
MAX_CANON_VERTICES = 10

#: Largest order :func:`enumerate_digraphs` runs without ``long_running``.
MAX_ENUM_VERTICES = 6

CanonicalForm = bytes


def _refine(graph: Digraph, colors: list[int]) -> list[int]:
    """Iterated colour refinement; colours are ranks of invariant signatures."""
    out, inn = graph.out, graph.inn
    n = graph.n
    count = len(set(colors))
    while True:
        sigs = [
            (
                colors[v],
                tuple(sorted(colors[w] for w in bits(out[v]))),
                tuple(sorted(colors[w] for w in bits(inn[v]))),
            )
            for v in range(n)
        ]
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colors = [rank[s] for s in sigs]
        if len(rank) == count:
            return colors
        count = len(rank)


def _encode(arcs: list[tuple[int, int]], perm: list[int], n: int) -> int:
    top = n * n - 1
    code = 0
    for u, v in arcs:
        code |= 1 << (top - (perm[u] * n + perm[v]))
    return code


def canonical_labeling(graph: Digraph) -> tuple[CanonicalForm, list[int]]:
    """Return the canonical key and a permutation mapping the graph onto its canonical copy.

    Individualisation-refinement without automorphism pruning: every leaf of
    the search tree is visited and the smallest adjacency code wins, so the
    result is exact.
    """
    n = graph.n
    if n > MAX_CANON_VERTICES:
        raise DigraphError(f"canonical form supports at most {MAX_CANON_VERTICES} vertices")
    arcs = graph.arcs
    best: list = [None, None]

    def search(colors: list[int]) -> None:
        colors = _refine(graph, colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            code = _encode(arcs, colors, n)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, colors
            return
        target = min(c for c, members in cells.items() if len(members) > 1)
        for v in cells[target]:
            search([
                2 * c + (1 if c == target and u != v else 0)
                for u, c in enumerate(colors)
            ])

    search([0] * n)
    key = bytes([n]) + best[0].to_bytes((n * n + 7) // 8, "big")
    return key, best[1]


def canonical_form(graph: Digraph) -> CanonicalForm:
    return canonical_labeling(graph)[0]


def canonical_graph(graph: Digraph) -> Digraph:
    """The canonical representative of the graph's isomorphism class."""
    _, perm = canonical_labeling(graph)
    return graph.relabel(perm)


def _check_order(n: int, oriented_only: bool, long_running: bool) -> None:
    if n < 1:
        raise DigraphError("enumeration needs n >= 1")
    if n <= MAX_ENUM_VERTICES:
        return
    if n == MAX_ENUM_VERTICES + 1 and oriented_only and long_running:
        return
    raise DigraphError(
        f"enumeration of order {n} is unsupported"
        + (" without the long-running flag" if n == 7 and oriented_only else "")
    )


def _extensions(base: Digraph, oriented_only: bool) -> Iterator[Digraph]:
    """All graphs whose last vertex is new and whose deletion leaves ``base``."""
    m = base.n
    new = 1 << m
    states = (0, 1, 2) if oriented_only else (0, 1, 2, 3)
    for choice in product(states, repeat=m):
        rows = list(base.out) + [0]
        for v, s in enumerate(choice):
            if s & 1:
                rows[m] |= 1 << v
            if s & 2:
                rows[v] |= new
        yield Digraph(m + 1, tuple(rows))


@lru_cache(maxsize=None)
def _all_classes(n: int, oriented_only: bool) -> tuple[Digraph, ...]:
    return tuple(_classes(n, oriented_only, None))


def _classes(
    n: int, oriented_only: bool, predicate: Callable[[Digraph], bool] | None
) -> list[Digraph]:
    if n == 1:
        single = Digraph(1, (0,))
        return [single] if predicate is None or predicate(single) else []
    found: dict[bytes, Digraph] = {}
    for base in _all_classes(n - 1, oriented_only):
        for graph in _extensions(base, oriented_only):
            if predicate is not None and not predicate(graph):
                continue
            key, perm = canonical_labeling(graph)
            if key not in found:
                found[key] = graph.relabel(perm)
    return [found[k] for k in sorted(found)]


def enumerate_digraphs(
    n: int,
    oriented_only: bool = False,
    predicate: Callable[[Digraph], bool] | None = None,
    *,
    long_running: bool = False,
) -> Iterator[Digraph]:
    """Yield one canonical representative per isomorphism class, ascending by canonical form.

    Graphs on ``n`` vertices are produced by attaching a new vertex to every
    class on ``n - 1`` vertices in all possible ways; ``predicate`` is applied
    before canonicalisation and must be isomorphism invariant.
    """
    _check_order(n, oriented_only, long_running)
    yield from _classes(n, oriented_only, predicate)
