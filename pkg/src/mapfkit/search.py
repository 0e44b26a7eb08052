"""Path-search core: a resumable backward search providing exact static
distances, space-time A* against a reservation table, and plain static A*.

Time is discrete; every action (move to a 4-neighbor or wait in place) takes
one step. A path's cost is its arrival time minus its start time, so waiting
is paid for. Two agents collide when they occupy the same cell at the same
step or traverse the same edge in opposite directions across the same step.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

from .grid import Coord, GridMap

TimedState = tuple[int, int, int]  # (x, y, t)


def manhattan(a: Coord, b: Coord) -> int:
    return abs(a[0] - b[0]) + abs(a[1] - b[1])


@dataclass(frozen=True)
class TimedPath:
    """One agent's timed trajectory: unit steps, waits allowed."""

    agent: int
    states: tuple[TimedState, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        if not self.states:
            raise ValueError("a timed path needs at least one state")
        for (x0, y0, t0), (x1, y1, t1) in zip(self.states, self.states[1:]):
            if t1 != t0 + 1:
                raise ValueError("path times must advance by exactly 1")
            if abs(x1 - x0) + abs(y1 - y0) > 1:
                raise ValueError("path steps must wait or move to a 4-neighbor")

    @property
    def start(self) -> Coord:
        return self.states[0][:2]

    @property
    def goal(self) -> Coord:
        return self.states[-1][:2]

    @property
    def start_time(self) -> int:
        return self.states[0][2]

    @property
    def arrival_time(self) -> int:
        return self.states[-1][2]

    @property
    def cost(self) -> int:
        return self.arrival_time - self.start_time

    def cells(self) -> list[Coord]:
        return [(x, y) for x, y, _ in self.states]

    def iter_moves(self):
        """Proper moves as ``(x0, y0, x1, y1, t0)``, waits skipped; the edge
        is traversed during ``[t0, t0 + 1]``."""
        for (x0, y0, t0), (x1, y1, _) in zip(self.states, self.states[1:]):
            if (x0, y0) != (x1, y1):
                yield (x0, y0, x1, y1, t0)


class PathConflictError(ValueError):
    """A path being inserted collides with existing reservations."""


class ReservationTable:
    """Space-time occupancy of already-fixed paths.

    Tracks vertex occupancy ``(x, y, t)``, edge traversals during
    ``[t, t + 1]`` (stored in both directions so a swap conflict is a single
    lookup), and indefinite goal stays (the final cell of a fixed path is
    occupied for every ``t >=`` its arrival time).
    """

    def __init__(self):
        self.vertices: set[TimedState] = set()
        self.edges: set[tuple[int, int, int, int, int]] = set()
        self.goal_stays: dict[Coord, int] = {}
        self._last_vertex: dict[Coord, int] = {}
        self._last_entry: dict[Coord, int] = {}
        self.last_time = 0  # latest finite reservation time

    def is_vertex_free(self, cell: Coord, t: int) -> bool:
        if (cell[0], cell[1], t) in self.vertices:
            return False
        stay = self.goal_stays.get(cell)
        return stay is None or t < stay

    def is_move_free(self, src: Coord, dst: Coord, t: int) -> bool:
        """True if traversing ``src -> dst`` during ``[t, t + 1]`` crosses no
        reserved edge."""
        return (src[0], src[1], dst[0], dst[1], t) not in self.edges

    def goal_clear_from(self, cell: Coord, t: int) -> bool:
        """True if an agent may park on ``cell`` for every time ``>= t``: no
        reserved stay there, and no vertex reservation or reserved edge
        entering the cell at or after ``t``."""
        if cell in self.goal_stays:
            return False
        return self._last_vertex.get(cell, -1) < t and self._last_entry.get(cell, -1) < t

    def path_conflict(self, path: TimedPath) -> str | None:
        """Describe the first conflict between ``path`` and the table, or
        None if the path (including its final stay) fits."""
        for x, y, t in path.states:
            if not self.is_vertex_free((x, y), t):
                return f"vertex ({x}, {y}) at t={t}"
        for x0, y0, x1, y1, t0 in path.iter_moves():
            if not self.is_move_free((x0, y0), (x1, y1), t0):
                return f"edge ({x0}, {y0})->({x1}, {y1}) at t={t0}"
        gx, gy, gt = path.states[-1]
        if not self.goal_clear_from((gx, gy), gt):
            return f"goal stay at ({gx}, {gy}) from t={gt}"
        return None

    def insert_path(self, path: TimedPath) -> None:
        """Reserve every state, both directions of every traversed edge, and
        an indefinite stay on the final cell. Conflicting paths are rejected;
        feasibility is the planner's job."""
        conflict = self.path_conflict(path)
        if conflict is not None:
            raise PathConflictError(
                f"agent {path.agent} path conflicts with reservations: {conflict}"
            )
        for x, y, t in path.states:
            self.vertices.add((x, y, t))
            if self._last_vertex.get((x, y), -1) < t:
                self._last_vertex[(x, y)] = t
        for x0, y0, x1, y1, t0 in path.iter_moves():
            self.edges.add((x0, y0, x1, y1, t0))
            self.edges.add((x1, y1, x0, y0, t0))
            if self._last_entry.get((x1, y1), -1) < t0:
                self._last_entry[(x1, y1)] = t0
        gx, gy, gt = path.states[-1]
        self.goal_stays[(gx, gy)] = gt
        self.last_time = max(self.last_time, gt)


class ReverseResumableAStar:
    """Exact distance-to-goal on the static map, computed lazily (RRA*).

    A backward best-first search from the goal is resumed on demand: a query
    for an already-settled cell is a dictionary lookup; otherwise the search
    continues, guided toward the queried cell, until that cell settles or
    the reachable region is exhausted. Settled distances are exact, so this
    is an admissible and consistent space-time heuristic.
    """

    def __init__(self, grid: GridMap, goal: Coord):
        if not grid.is_free(goal):
            raise ValueError(f"goal {goal} is not a free cell")
        self.grid = grid
        self.goal = goal
        self.settled: dict[Coord, int] = {}
        self._frontier: dict[Coord, int] = {goal: 0}
        self.expanded = 0  # total settles, across all queries

    def distance(self, cell: Coord) -> int | None:
        """Shortest static distance from ``cell`` to the goal, or None when
        unreachable. Never recomputes settled cells."""
        hit = self.settled.get(cell)
        if hit is not None:
            return hit
        if not self._frontier:
            return None  # reachable region fully settled already
        heap = [
            (g + manhattan(c, cell), g, c[1], c[0]) for c, g in self._frontier.items()
        ]
        heapq.heapify(heap)
        neighbors = self.grid.neighbors4
        settled = self.settled
        frontier = self._frontier
        while heap:
            _, g, y, x = heapq.heappop(heap)
            node = (x, y)
            if frontier.get(node) != g:
                continue  # stale entry
            del frontier[node]
            settled[node] = g
            self.expanded += 1
            # relax neighbors before a possible return: the frontier must
            # always border the settled set or later resumes would miss cells
            ng = g + 1
            for nb in neighbors(node):
                if nb in settled:
                    continue
                old = frontier.get(nb)
                if old is None or ng < old:
                    frontier[nb] = ng
                    heapq.heappush(heap, (ng + manhattan(nb, cell), ng, nb[1], nb[0]))
            if node == cell:
                return g
        return settled.get(cell)


def space_time_astar(
    grid: GridMap,
    start: Coord,
    goal: Coord,
    rt: ReservationTable | None = None,
    start_t: int = 0,
    horizon: int | None = None,
    heuristic: ReverseResumableAStar | None = None,
    agent: int = 0,
) -> TimedPath | None:
    """Minimum-arrival-time path from ``(start, start_t)`` to ``goal``
    honoring the reservation table, or None if no such path exists within
    ``horizon``.

    Arrival at the goal is accepted only when parking there forever is safe:
    no reservation touches the goal cell at or after the arrival time. Ties
    are broken on (f, larger g, t, y, x), so results are reproducible.

    The default horizon, last reservation time plus the map area, is enough
    for any optimal path: waiting out all reserved activity and then making
    a simple detour never needs more steps than there are cells.
    """
    if not grid.is_free(start):
        raise ValueError(f"start {start} is not a free cell")
    if not grid.is_free(goal):
        raise ValueError(f"goal {goal} is not a free cell")
    if rt is not None and not rt.is_vertex_free(start, start_t):
        raise ValueError(f"start {start} is reserved at t={start_t}")
    if heuristic is not None and heuristic.goal != goal:
        raise ValueError(f"heuristic was built for goal {heuristic.goal}, not {goal}")

    h = heuristic if heuristic is not None else ReverseResumableAStar(grid, goal)
    h_start = h.distance(start)
    if h_start is None:
        return None
    if horizon is None:
        horizon = max(start_t, rt.last_time if rt is not None else 0) + grid.width * grid.height

    if rt is None:
        vertex_ok = lambda cell, t: True  # noqa: E731
        move_ok = lambda u, v, t: True  # noqa: E731
        goal_ok = lambda t: True  # noqa: E731
    else:
        vertex_ok = rt.is_vertex_free
        move_ok = rt.is_move_free
        goal_ok = lambda t: rt.goal_clear_from(goal, t)  # noqa: E731

    neighbors = grid.neighbors4
    distance = h.distance
    sx, sy = start
    parent: dict[TimedState, TimedState | None] = {(sx, sy, start_t): None}
    heap: list[tuple[int, int, int, int, int]] = [(h_start, 0, start_t, sy, sx)]
    while heap:
        f, _, t, y, x = heapq.heappop(heap)
        if (x, y) == goal and goal_ok(t):
            states = []
            cur: TimedState | None = (x, y, t)
            while cur is not None:
                states.append(cur)
                cur = parent[cur]
            states.reverse()
            return TimedPath(agent, tuple(states))
        if t >= horizon:
            continue
        nt = t + 1
        here = (x, y)
        neg_g = start_t - nt
        if vertex_ok(here, nt):
            ws = (x, y, nt)
            if ws not in parent:
                parent[ws] = (x, y, t)
                heapq.heappush(heap, (f + 1, neg_g, nt, y, x))
        for nb in neighbors(here):
            if not vertex_ok(nb, nt):
                continue
            if not move_ok(here, nb, t):
                continue
            ns = (nb[0], nb[1], nt)
            if ns in parent:
                continue
            hd = distance(nb)
            if hd is None:
                continue
            parent[ns] = (x, y, t)
            heapq.heappush(heap, (nt - start_t + hd, neg_g, nt, nb[1], nb[0]))
    return None


def astar_static(grid: GridMap, start: Coord, goal: Coord) -> list[Coord] | None:
    """Shortest 4-connected path on the static map as a cell sequence, or
    None when disconnected.

    Runs the space-time search with no reservations, so single-agent plans
    and first-round candidate paths of the iterated solver are identical.
    """
    path = space_time_astar(grid, start, goal)
    return path.cells() if path is not None else None
