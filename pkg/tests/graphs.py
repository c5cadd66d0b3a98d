"""Small named graphs shared by the tests."""

from dipebble.digraph import Digraph


def cycle(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def complete_bidirected(n: int) -> Digraph:
    return Digraph.from_arcs(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def bidirected_path(n: int) -> Digraph:
    return Digraph.from_arcs(n, [x for i in range(n - 1) for x in ((i, i + 1), (i + 1, i))])
