"""Two planners over the same search core.

``solve_hca`` is classic prioritized planning: agents plan one at a time in a
user-supplied priority order, each against the reservations of its
predecessors. ``solve_variant`` needs no priority order: every unfixed agent
plans simultaneously against the current reservations, candidate paths are
split per map partition and checked for collisions partition-locally, an
independent set of the resulting collision graph is fixed, and the rest
replan. Both planners share the reservation semantics (including indefinite
goal stays), so their costs are directly comparable.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any

from .comm import (
    CommConfig,
    CommLedger,
    IterationComm,
    comm_time,
    intersection_graph_bits,
    iteration_path_bits,
    reservation_table_bits,
    source_goal_bits,
)
from .conflicts import (
    IntersectionGraph,
    SubpathSegment,
    detect_conflicts_in_partition,
    split_path,
)
from .grid import Coord, GridMap, Partitioning
from .indset import EXACT_THRESHOLD_DEFAULT, independent_set
from .search import (
    ReservationTable,
    ReverseResumableAStar,
    TimedPath,
    astar_static,
    space_time_astar,
)


class InvalidInstanceError(ValueError):
    """A problem instance violates its structural invariants."""


class SolveFailure(RuntimeError):
    """A planner could not complete; ``agent`` names the blocked agent when
    one is identifiable."""

    def __init__(self, reason: str, agent: int | None = None):
        super().__init__(reason)
        self.reason = reason
        self.agent = agent


class SolveTimeout(SolveFailure):
    pass


@dataclass(frozen=True)
class ProblemInstance:
    """A map plus per-agent (source, goal) pairs, indexed by agent id."""

    grid: GridMap
    agents: tuple[tuple[Coord, Coord], ...]
    metadata: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(
            self, "agents", tuple((tuple(s), tuple(g)) for s, g in self.agents)
        )

    @property
    def n_agents(self) -> int:
        return len(self.agents)

    def validate(self, check_reachability: bool = True) -> None:
        """Raise InvalidInstanceError unless sources are pairwise distinct,
        goals are pairwise distinct, all endpoints are free cells, and (when
        requested) every goal is reachable from its source."""
        sources = [s for s, _ in self.agents]
        goals = [g for _, g in self.agents]
        for i, (s, g) in enumerate(self.agents):
            if not self.grid.is_free(s):
                raise InvalidInstanceError(f"agent {i} source {s} blocked or out of bounds")
            if not self.grid.is_free(g):
                raise InvalidInstanceError(f"agent {i} goal {g} blocked or out of bounds")
        if len(set(sources)) != len(sources):
            raise InvalidInstanceError("sources must be pairwise distinct")
        if len(set(goals)) != len(goals):
            raise InvalidInstanceError("goals must be pairwise distinct")
        if check_reachability:
            for i, (s, g) in enumerate(self.agents):
                if astar_static(self.grid, s, g) is None:
                    raise InvalidInstanceError(f"agent {i} goal {g} unreachable from {s}")


@dataclass(frozen=True)
class Solution:
    """Per-agent paths with the two standard cost totals."""

    paths: dict[int, TimedPath]
    sum_of_costs: int
    makespan: int

    @classmethod
    def from_paths(cls, paths: dict[int, TimedPath]) -> "Solution":
        costs = [p.cost for p in paths.values()]
        return cls(dict(paths), sum(costs), max(costs) if costs else 0)


@dataclass(frozen=True)
class VariantConfig:
    exact_threshold: int = EXACT_THRESHOLD_DEFAULT
    workers: int = 1
    comm: CommConfig = field(default_factory=CommConfig)
    n_partitions: int | None = None  # default: one partition per agent

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("workers must be positive")


@dataclass
class IterationRecord:
    """Everything one solve round produced, enough to re-derive the
    communication ledger and the idealized parallel time."""

    pending: tuple[int, ...]
    candidate_paths: dict[int, TimedPath]
    ig: IntersectionGraph
    partition_pair_counts: dict[int, int]
    partition_owners: dict[int, int]
    intersections_by_agent: dict[int, int]
    independent: tuple[int, ...]
    comm: IterationComm
    search_seconds: dict[int, float]
    detect_seconds: dict[int, float]
    server_seconds: float

    @property
    def parallel_seconds(self) -> float:
        """Round latency under ideal parallelism: slowest search, then the
        slowest partition check, then the serial server work."""
        slowest_search = max(self.search_seconds.values(), default=0.0)
        slowest_detect = max(self.detect_seconds.values(), default=0.0)
        return slowest_search + slowest_detect + self.server_seconds


@dataclass
class SolveTrace:
    n_agents: int
    map_side: int
    n_partitions: int
    iterations: list[IterationRecord] = field(default_factory=list)
    ledger: CommLedger = field(default_factory=CommLedger)
    wall_seconds: float = 0.0

    @property
    def n_iterations(self) -> int:
        return len(self.iterations)

    @property
    def ideal_parallel_seconds(self) -> float:
        return sum(r.parallel_seconds for r in self.iterations)

    def comm_seconds(self, cfg: CommConfig | None = None) -> float:
        return comm_time(self.ledger, cfg)


def solve_hca(instance: ProblemInstance, order, timeout: float = 60.0) -> Solution:
    """Prioritized planning: plan agents one at a time in ``order``, each
    against the reservations of its predecessors.

    Incomplete by nature: raises SolveFailure naming the first agent whose
    search comes back empty, or SolveTimeout past the budget.
    """
    grid = instance.grid
    order = [int(a) for a in order]
    if sorted(order) != list(range(instance.n_agents)):
        raise ValueError("order must be a permutation of agent ids")
    deadline = time.perf_counter() + timeout
    rt = ReservationTable()
    area = grid.width * grid.height
    paths: dict[int, TimedPath] = {}
    for agent in order:
        if time.perf_counter() > deadline:
            raise SolveTimeout(f"timed out after {timeout} s", agent=agent)
        src, dst = instance.agents[agent]
        path = space_time_astar(
            grid, src, dst, rt, 0, horizon=rt.last_time + area, agent=agent
        )
        if path is None:
            raise SolveFailure(f"no feasible path for agent {agent}", agent=agent)
        rt.insert_path(path)
        paths[agent] = path
    return Solution.from_paths(paths)


def solve_variant(
    instance: ProblemInstance,
    cfg: VariantConfig | None = None,
    timeout: float = 60.0,
) -> tuple[Solution, SolveTrace]:
    """Iterated independent-set planning (no priority order needed).

    Each round: every pending agent plans against the current reservations
    (round one degenerates to plain shortest paths), paths are split per
    partition and checked partition-locally, the collision graph is
    assembled, an independent set of it is fixed into the reservation table,
    and the remaining agents replan. At least one agent is fixed per round,
    so at most ``n_agents`` rounds run. Results are identical for any worker
    count.
    """
    cfg = cfg if cfg is not None else VariantConfig()
    grid = instance.grid
    n = instance.n_agents
    map_side = max(grid.width, grid.height)
    n_parts = cfg.n_partitions if cfg.n_partitions is not None else max(n, 1)
    part = Partitioning.for_map(grid, n_parts)
    trace = SolveTrace(n_agents=n, map_side=map_side, n_partitions=n_parts)
    if n == 0:
        return Solution.from_paths({}), trace

    grid._neighbor_table  # build the shared neighbor table before any threads run
    deadline = time.perf_counter() + timeout
    area = grid.width * grid.height
    rt = ReservationTable()
    heuristics = {
        i: ReverseResumableAStar(grid, instance.agents[i][1]) for i in range(n)
    }
    pending = list(range(n))
    fixed: dict[int, TimedPath] = {}
    wall0 = time.perf_counter()
    executor = ThreadPoolExecutor(cfg.workers) if cfg.workers > 1 else None
    try:
        while pending:
            if time.perf_counter() > deadline:
                raise SolveTimeout(f"timed out after {timeout} s")
            horizon = rt.last_time + area

            def plan(agent: int):
                t0 = time.perf_counter()
                src, dst = instance.agents[agent]
                path = space_time_astar(
                    grid, src, dst, rt, 0,
                    horizon=horizon, heuristic=heuristics[agent], agent=agent,
                )
                return agent, path, time.perf_counter() - t0

            planned = list(executor.map(plan, pending)) if executor else [plan(a) for a in pending]
            search_seconds: dict[int, float] = {}
            candidates: dict[int, TimedPath] = {}
            for agent, path, dt in planned:
                search_seconds[agent] = dt
                if path is None:
                    raise SolveFailure(f"no feasible path for agent {agent}", agent=agent)
                candidates[agent] = path

            segments_by_agent = {a: split_path(candidates[a], part, grid) for a in pending}
            by_partition: dict[int, list[SubpathSegment]] = {}
            for a in pending:
                for seg in segments_by_agent[a]:
                    by_partition.setdefault(seg.partition, []).append(seg)
            det_horizon = max(candidates[a].arrival_time for a in pending)

            def detect(pid: int):
                t0 = time.perf_counter()
                report = detect_conflicts_in_partition(by_partition[pid], det_horizon)
                return pid, report, time.perf_counter() - t0

            pids = sorted(by_partition)
            detected = list(executor.map(detect, pids)) if executor else [detect(p) for p in pids]

            server0 = time.perf_counter()
            detect_seconds: dict[int, float] = {}
            pair_counts: dict[int, int] = {}
            edges: set[tuple[int, int]] = set()
            for pid, report, dt in detected:
                detect_seconds[pid] = dt
                pair_counts[pid] = report.count
                edges |= report.pairs
            ig = IntersectionGraph(tuple(pending), frozenset(edges))
            chosen = tuple(sorted(independent_set(ig, cfg.exact_threshold)))
            owners = {pid: pending[pid % len(pending)] for pid in range(n_parts)}
            e_counts = {a: 0 for a in pending}
            for pid, cnt in pair_counts.items():
                e_counts[owners[pid]] += cnt
            comm_entry = IterationComm(
                source_goal_bits=source_goal_bits(len(pending), map_side),
                path_bits=iteration_path_bits(
                    (segments_by_agent[a] for a in pending), n, map_side
                ),
                ig_bits=intersection_graph_bits(pair_counts, n),
            )
            for a in chosen:
                rt.insert_path(candidates[a])
                fixed[a] = candidates[a]
            server_seconds = time.perf_counter() - server0

            trace.iterations.append(
                IterationRecord(
                    pending=tuple(pending),
                    candidate_paths=dict(candidates),
                    ig=ig,
                    partition_pair_counts=pair_counts,
                    partition_owners=owners,
                    intersections_by_agent=e_counts,
                    independent=chosen,
                    comm=comm_entry,
                    search_seconds=search_seconds,
                    detect_seconds=detect_seconds,
                    server_seconds=server_seconds,
                )
            )
            trace.ledger.iterations.append(comm_entry)
            chosen_set = set(chosen)
            pending = [a for a in pending if a not in chosen_set]
    finally:
        if executor is not None:
            executor.shutdown()

    trace.ledger.rt_bits = reservation_table_bits(
        [fixed[i].cost for i in range(n)], n, map_side
    )
    trace.wall_seconds = time.perf_counter() - wall0
    return Solution.from_paths(fixed), trace
