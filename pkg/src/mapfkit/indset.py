"""Independent-set extraction from the collision graph: exact branch-and-
bound on small connected components, minimum-degree greedy on larger ones.

Every returned set is independent and maximal, and nonempty whenever the
graph has a node, which is what guarantees the iterated solver always fixes
at least one agent per round.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .conflicts import IntersectionGraph, connected_components

EXACT_THRESHOLD_DEFAULT = 10


@dataclass(frozen=True, eq=False)
class ComponentGraph:
    """One connected component of the collision graph, with adjacency."""

    nodes: tuple[int, ...]
    adj: dict[int, frozenset[int]]

    @classmethod
    def from_graph(cls, g: IntersectionGraph, component: Iterable[int]) -> "ComponentGraph":
        members = frozenset(component)
        adj: dict[int, set[int]] = {n: set() for n in members}
        for a, b in g.edges:
            if a in members and b in members:
                adj[a].add(b)
                adj[b].add(a)
        return cls(tuple(sorted(members)), {n: frozenset(s) for n, s in adj.items()})


def mis_exact(g: ComponentGraph, max_nodes: int = EXACT_THRESHOLD_DEFAULT) -> set[int]:
    """Maximum independent set by branch-and-bound over include/exclude
    decisions; among maximum sets, the lexicographically smallest sorted id
    tuple wins, so results are reproducible."""
    if len(g.nodes) > max_nodes:
        raise ValueError(f"component of size {len(g.nodes)} exceeds the exact limit {max_nodes}")
    adj = g.adj
    best_size = -1
    best: tuple[int, ...] = ()

    def visit(remaining: tuple[int, ...], chosen: tuple[int, ...]) -> None:
        nonlocal best_size, best
        if len(chosen) + len(remaining) < best_size:
            return  # cannot reach the best size; ties must still be explored
        if not remaining:
            if len(chosen) > best_size or (len(chosen) == best_size and chosen < best):
                best_size, best = len(chosen), chosen
            return
        v = remaining[0]
        rest = remaining[1:]
        visit(tuple(u for u in rest if u not in adj[v]), chosen + (v,))
        visit(rest, chosen)

    visit(tuple(sorted(g.nodes)), ())
    return set(best)


def mis_greedy(g: ComponentGraph) -> set[int]:
    """Maximal independent set via minimum-degree greedy: repeatedly take the
    lowest-degree node (smallest id on ties) and discard its neighbors."""
    remaining = set(g.nodes)
    degree = {n: len(g.adj[n]) for n in g.nodes}
    chosen: set[int] = set()
    while remaining:
        v = min(remaining, key=lambda n: (degree[n], n))
        chosen.add(v)
        dropped = (g.adj[v] & remaining) | {v}
        remaining -= dropped
        for u in dropped:
            for w in g.adj[u]:
                if w in remaining:
                    degree[w] -= 1
    return chosen


def independent_set(
    g: IntersectionGraph, exact_threshold: int = EXACT_THRESHOLD_DEFAULT
) -> set[int]:
    """Union over connected components of the exact solution (components up
    to ``exact_threshold`` nodes) or the greedy approximation (larger)."""
    result: set[int] = set()
    for comp in connected_components(g):
        cg = ComponentGraph.from_graph(g, comp)
        if len(comp) <= exact_threshold:
            result |= mis_exact(cg, exact_threshold)
        else:
            result |= mis_greedy(cg)
    return result
