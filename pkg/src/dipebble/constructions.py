"""Extremal digraph constructions and closed-form pebbling bounds.

Bounds are exact rationals; callers take floors or ceilings themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .digraph import Digraph, is_oriented, strong_diameter
from .pebbling import NotStronglyConnected, PebblingNumberResult


@dataclass(frozen=True)
class ConstructionOutput:
    graph: Digraph
    root: int
    extremal_config: tuple[int, ...]
    claimed_unsolvable: bool
    parameters: dict = field(default_factory=dict)

    def sidecar(self) -> dict:
        return {
            "root": self.root,
            "extremal_config": list(self.extremal_config),
            "parameters": dict(self.parameters),
        }


def build_mixed2(k: int) -> ConstructionOutput:
    """Diameter-2 digraph on 2k+1 vertices with an unsolvable configuration of 3k pebbles.

    Vertices ``0..k-1`` form the independent part A, ``k..2k-1`` the complete
    bidirected part B and ``2k`` is the root.  A perfect matching runs A -> B
    and every other A/B pair is oriented B -> A.
    """
    if k < 1:
        raise ValueError("build_mixed2 needs k >= 1")
    r = 2 * k
    arcs = []
    for i in range(k):
        for j in range(k):
            arcs.append((i, k + j) if i == j else (k + j, i))
    arcs += [(k + i, k + j) for i in range(k) for j in range(k) if i != j]
    arcs += [(k + j, r) for j in range(k)]
    arcs += [(r, i) for i in range(k)]
    config = tuple([3] * k + [0] * (k + 1))
    return ConstructionOutput(Digraph.from_arcs(2 * k + 1, arcs), r, config, True, {"k": k})


def build_layered(d: int, k: int) -> ConstructionOutput:
    """Layered digraph of strong diameter d with k vertices per layer.

    Layer ``i`` (1-based) holds vertices ``(i-1)k .. ik-1`` and the root is
    ``dk``.  Consecutive layers are joined by the matching ``j -> j``; the last
    layer is complete bidirected, points at the root, and points back at every
    earlier vertex except its own matching predecessor.  The root points at
    layer 1, which receives ``2^d - 1`` pebbles per vertex.
    """
    if d < 2 or k < 1:
        raise ValueError("build_layered needs d >= 2 and k >= 1")
    r = d * k

    def vertex(layer: int, j: int) -> int:
        return (layer - 1) * k + j

    arcs = []
    for layer in range(1, d):
        arcs += [(vertex(layer, j), vertex(layer + 1, j)) for j in range(k)]
    top = [vertex(d, j) for j in range(k)]
    arcs += [(x, y) for x in top for y in top if x != y]
    arcs += [(x, r) for x in top]
    arcs += [(r, vertex(1, j)) for j in range(k)]
    for j, x in enumerate(top):
        for layer in range(1, d):
            arcs += [
                (x, vertex(layer, i))
                for i in range(k)
                if not (layer == d - 1 and i == j)
            ]
    config = tuple([2**d - 1] * k + [0] * (r + 1 - k))
    return ConstructionOutput(
        Digraph.from_arcs(r + 1, arcs), r, config, True, {"d": d, "k": k}
    )


@dataclass(frozen=True)
class BoundValue:
    value: Fraction
    formula_id: str

    @property
    def floor(self) -> int:
        return math.floor(self.value)

    @property
    def ceiling(self) -> int:
        return math.ceil(self.value)


def bound_dboundsharp_statement(n: int, d: int) -> BoundValue:
    """(2^(d-1) - 1) * floor((n-1)/2) + 2^((n-2) mod d) - 1."""
    if n < 2 or d < 1:
        raise ValueError("needs n >= 2 and d >= 1")
    value = (2 ** (d - 1) - 1) * ((n - 1) // 2) + 2 ** ((n - 2) % d) - 1
    return BoundValue(Fraction(value), "statement")


def bound_construction_certified(n: int, d: int) -> BoundValue:
    """Lower bound k(2^d - 1) + 1 certified by ``build_layered(d, k)`` with n = dk + 1."""
    if d < 2:
        raise ValueError("needs d >= 2")
    if n < 2 or (n - 1) % d:
        raise ValueError(f"d={d} does not divide n-1={n - 1}")
    k = (n - 1) // d
    return BoundValue(Fraction(k * (2**d - 1) + 1), "construction_certified")


def bound_dboundupper(n: int, d: int) -> BoundValue:
    """n(2^d/d - 1) + 2^(4d+1)(1 - 1/d)."""
    if n < 1 or d < 1:
        raise ValueError("needs n >= 1 and d >= 1")
    value = n * (Fraction(2**d, d) - 1) + 2 ** (4 * d + 1) * (1 - Fraction(1, d))
    return BoundValue(value, "upper")


@dataclass
class BoundCheck:
    name: str
    applicable: bool
    passed: bool
    detail: str


def verify_bounds(graph: Digraph, result: PebblingNumberResult) -> list[BoundCheck]:
    """Check the computed pebbling number against every applicable upper bound."""
    d = strong_diameter(graph)
    if d is None:
        raise NotStronglyConnected("graph is not strongly connected")
    n, pi = graph.n, result.pi
    checks = []
    if d == 2 and is_oriented(graph):
        checks.append(BoundCheck("thm_noBiN+1", True, pi <= n + 1, f"pi={pi} <= n+1={n + 1}"))
    else:
        checks.append(BoundCheck("thm_noBiN+1", False, True, "needs an oriented graph of diameter 2"))
    if d == 2:
        checks.append(
            BoundCheck("thm_mixed2_bound", True, 2 * pi < 3 * n, f"pi={pi} < 3n/2={Fraction(3 * n, 2)}")
        )
    else:
        checks.append(BoundCheck("thm_mixed2_bound", False, True, "needs diameter 2"))
    if d >= 1:
        cap = bound_dboundupper(n, d).ceiling
        checks.append(BoundCheck("thm_dboundupper", True, pi <= cap, f"pi={pi} <= {cap}"))
    else:
        checks.append(BoundCheck("thm_dboundupper", False, True, "single vertex"))
    return checks
