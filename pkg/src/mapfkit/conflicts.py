"""Candidate-path conflict detection: per-partition subpath splitting,
partition-local collision reports, intersection-graph assembly, connected
components, and whole-solution validation.

A path's final cell stays occupied after arrival (agents park at their
goals), so detection extends final states forward in time up to the
iteration horizon. Timed edges are checked in the partitions of both of
their endpoints and deduplicated when reports merge, which is what makes
partition-local detection equivalent to the all-pairs check.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .grid import Coord, GridMap, Partitioning
from .search import TimedPath, TimedState


@dataclass(frozen=True)
class SubpathSegment:
    """Maximal run of consecutive path states inside one partition.

    ``prev_state`` / ``next_state`` are the path states immediately outside
    the run (None at the path's ends); they carry the boundary-crossing moves
    that belong to no segment's own state list. ``length`` counts moves, so a
    single-state visit has length 0.
    """

    agent: int
    partition: int
    states: tuple[TimedState, ...]
    prev_state: TimedState | None = None
    next_state: TimedState | None = None

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise ValueError("a segment needs at least one state")

    @property
    def start_cell(self) -> Coord:
        return self.states[0][:2]

    @property
    def start_time(self) -> int:
        return self.states[0][2]

    @property
    def length(self) -> int:
        return len(self.states) - 1

    @property
    def ends_path(self) -> bool:
        return self.next_state is None


def split_path(path: TimedPath, part: Partitioning, grid: GridMap) -> list[SubpathSegment]:
    """Cut a path into per-partition segments in O(path length).

    Every state lands in exactly one segment; a new segment opens whenever
    the partition id changes, so re-entering a partition yields separate,
    time-disjoint segments.
    """
    if (part.width, part.height) != (grid.width, grid.height):
        raise ValueError("partitioning was built for a different map size")
    locate = part.locate
    states = path.states
    runs: list[tuple[int, list[TimedState]]] = []
    run = [states[0]]
    run_part = locate(states[0][:2])
    for st in states[1:]:
        pid = locate(st[:2])
        if pid == run_part:
            run.append(st)
        else:
            runs.append((run_part, run))
            run = [st]
            run_part = pid
    runs.append((run_part, run))
    segments = []
    for i, (pid, sts) in enumerate(runs):
        prev_state = runs[i - 1][1][-1] if i > 0 else None
        next_state = runs[i + 1][1][0] if i + 1 < len(runs) else None
        segments.append(SubpathSegment(path.agent, pid, tuple(sts), prev_state, next_state))
    return segments


@dataclass(frozen=True)
class ConflictReport:
    """Deduplicated colliding agent pairs observed within one partition."""

    partition: int
    pairs: frozenset[tuple[int, int]]

    @property
    def count(self) -> int:
        return len(self.pairs)


def _pair(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def detect_conflicts_in_partition(
    segments: Sequence[SubpathSegment], horizon: int
) -> ConflictReport:
    """Vertex, goal-stay and swap conflicts among one partition's segments.

    ``horizon`` caps the goal-stay extension and should be the latest arrival
    time over the iteration's candidate paths. Boundary moves (entry/exit of
    a segment) participate in swap detection here and in the neighboring
    partition alike; set semantics dedupe the double sighting downstream.
    """
    partition = segments[0].partition if segments else -1
    pairs: set[tuple[int, int]] = set()
    occupancy: dict[TimedState, list[int]] = {}
    cell_visits: dict[Coord, list[tuple[int, int]]] = {}
    moves: dict[tuple[int, int, int, int, int], list[int]] = {}
    enders: dict[Coord, list[tuple[int, int]]] = {}

    for seg in segments:
        a = seg.agent
        sts = seg.states
        for st in sts:
            occupancy.setdefault(st, []).append(a)
            cell_visits.setdefault(st[:2], []).append((st[2], a))
        for (x0, y0, t0), (x1, y1, _) in zip(sts, sts[1:]):
            if (x0, y0) != (x1, y1):
                moves.setdefault((x0, y0, x1, y1, t0), []).append(a)
        if seg.prev_state is not None:
            px, py, pt = seg.prev_state
            x0, y0, _ = sts[0]
            moves.setdefault((px, py, x0, y0, pt), []).append(a)
        if seg.next_state is not None:
            nx, ny, _ = seg.next_state
            x1, y1, t1 = sts[-1]
            moves.setdefault((x1, y1, nx, ny, t1), []).append(a)
        else:
            x1, y1, t1 = sts[-1]
            enders.setdefault((x1, y1), []).append((t1, a))

    for agents in occupancy.values():
        if len(agents) > 1:
            for a, b in itertools.combinations(agents, 2):
                if a != b:
                    pairs.add(_pair(a, b))
    for cell, stays in enders.items():
        visits = cell_visits.get(cell, ())
        for t_arr, a in stays:
            for t, b in visits:
                if b != a and t_arr < t <= horizon:
                    pairs.add(_pair(a, b))
        for (_, a), (_, b) in itertools.combinations(stays, 2):
            if a != b:
                pairs.add(_pair(a, b))  # two parked agents share the cell forever
    for (x0, y0, x1, y1, t), agents in moves.items():
        rev = moves.get((x1, y1, x0, y0, t))
        if rev:
            for a in agents:
                for b in rev:
                    if a != b:
                        pairs.add(_pair(a, b))
    return ConflictReport(partition, frozenset(pairs))


@dataclass(frozen=True)
class IntersectionGraph:
    """Agents as nodes; an edge joins two agents whose candidate paths
    collide anywhere under full-path semantics."""

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {n: set() for n in self.nodes}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj


def partition_conflict_reports(
    paths: Iterable[TimedPath], part: Partitioning, grid: GridMap
) -> dict[int, ConflictReport]:
    """Split every path and run partition-local detection wherever at least
    one segment lands; reports are keyed by partition id."""
    paths = list(paths)
    if not paths:
        return {}
    horizon = max(p.arrival_time for p in paths)
    by_partition: dict[int, list[SubpathSegment]] = {}
    for path in paths:
        for seg in split_path(path, part, grid):
            by_partition.setdefault(seg.partition, []).append(seg)
    return {
        pid: detect_conflicts_in_partition(segs, horizon)
        for pid, segs in sorted(by_partition.items())
    }


def build_intersection_graph(
    paths: Iterable[TimedPath], part: Partitioning, grid: GridMap
) -> IntersectionGraph:
    """Assemble the collision graph from partition-local reports; the edge
    set equals what an all-pairs whole-path comparison would find."""
    paths = list(paths)
    edges: set[tuple[int, int]] = set()
    for report in partition_conflict_reports(paths, part, grid).values():
        edges |= report.pairs
    return IntersectionGraph(tuple(sorted(p.agent for p in paths)), frozenset(edges))


def connected_components(g: IntersectionGraph) -> list[tuple[int, ...]]:
    """Connected components as sorted node tuples, singletons included,
    ordered by smallest member."""
    adj = g.adjacency()
    seen: set[int] = set()
    components = []
    for node in sorted(g.nodes):
        if node in seen:
            continue
        comp = []
        stack = [node]
        seen.add(node)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        components.append(tuple(sorted(comp)))
    return components


def validate_solution(
    paths: Mapping[int, TimedPath] | Iterable[TimedPath],
    grid: GridMap,
    endpoints: Mapping[int, tuple[Coord, Coord]] | Sequence[tuple[Coord, Coord]] | None = None,
) -> list[str]:
    """Check each path and every pair under full collision semantics,
    including indefinite goal stays up to the global makespan. Returns the
    violations found; an empty list means the solution is valid.
    """
    items = list(paths.values()) if isinstance(paths, Mapping) else list(paths)
    violations: list[str] = []
    for path in items:
        a = path.agent
        for x, y, t in path.states:
            if not grid.is_free((x, y)):
                violations.append(f"agent {a}: state ({x}, {y}, {t}) blocked or out of bounds")
        if endpoints is not None:
            src, dst = endpoints[a]
            if path.start != tuple(src):
                violations.append(f"agent {a}: starts at {path.start}, expected {tuple(src)}")
            if path.goal != tuple(dst):
                violations.append(f"agent {a}: ends at {path.goal}, expected {tuple(dst)}")
    if not items:
        return violations

    makespan = max(p.arrival_time for p in items)
    occupants: dict[TimedState, int] = {}
    for path in items:
        a = path.agent
        gx, gy, gt = path.states[-1]
        stay = ((gx, gy, t) for t in range(gt + 1, makespan + 1))
        for x, y, t in itertools.chain(path.states, stay):
            other = occupants.get((x, y, t))
            if other is None:
                occupants[(x, y, t)] = a
            elif other != a:
                violations.append(
                    f"agents {_pair(other, a)[0]} and {_pair(other, a)[1]} share ({x}, {y}) at t={t}"
                )
    edge_use: dict[tuple[int, int, int, int, int], int] = {}
    for path in items:
        for move in path.iter_moves():
            edge_use[move] = path.agent
    for (x0, y0, x1, y1, t0), a in edge_use.items():
        if (x0, y0) > (x1, y1):
            continue  # report each undirected edge once
        b = edge_use.get((x1, y1, x0, y0, t0))
        if b is not None and b != a:
            violations.append(
                f"agents {_pair(a, b)[0]} and {_pair(a, b)[1]} swap ({x0}, {y0})<->({x1}, {y1}) at t={t0}"
            )
    return violations
